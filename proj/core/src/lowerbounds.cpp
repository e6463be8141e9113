#include "truthlab/lowerbounds.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace truthlab::lowerbounds {

using scheduling::SchedulingInstance;
using scheduling::TaskAllocation;

SchedulingInstance BoundFamily::instance_at(std::size_t index) const {
  return domain.instantiate(profiles.at(index));
}

void BoundFamily::validate() const {
  domain.validate();
  if (profiles.empty()) throw std::invalid_argument("family lists no profiles");
  if (!probabilities.empty()) {
    if (probabilities.size() != profiles.size()) {
      throw std::invalid_argument("one probability per profile required");
    }
    Rational total = 0;
    for (const Rational& p : probabilities) {
      if (p < 0) throw std::invalid_argument("negative probability");
      total += p;
    }
    if (total != 1) throw std::invalid_argument("family distribution must sum to 1");
  }
  for (const LinkedPair& pair : linked_pairs) {
    if (pair.from >= profiles.size() || pair.to >= profiles.size()) {
      throw std::invalid_argument("linked pair index out of range");
    }
    const Profile& a = profiles[pair.from];
    const Profile& b = profiles[pair.to];
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) ++differing;
    }
    if (differing != 1 || a[pair.player] == b[pair.player]) {
      throw std::invalid_argument("linked profiles must differ in exactly the linked player");
    }
  }
}

namespace {

void require_positive_epsilon(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
}

std::vector<ExactScalar> cost_row(std::size_t tasks,
                                  const std::function<ExactScalar(std::size_t)>& f) {
  std::vector<ExactScalar> row;
  row.reserve(tasks);
  for (std::size_t t = 0; t < tasks; ++t) row.push_back(f(t));
  return row;
}

ExactScalar bundle_cost(const std::vector<ExactScalar>& task_cost, const TaskAllocation& alloc,
                        std::size_t player) {
  ExactScalar total;
  for (std::size_t j = 0; j < alloc.machine_of.size(); ++j) {
    if (alloc.machine_of[j] == player) total += task_cost[j];
  }
  return total;
}

}  // namespace

BoundFamily thm2_family(const Rational& eps) {
  require_positive_epsilon(eps);
  BoundFamily f;
  f.id = "thm2";
  f.machines = 2;
  f.tasks = 3;
  f.epsilon = eps;
  f.effective_machines = 2;
  f.domain.machines = 2;
  f.domain.tasks = 3;
  f.domain.types.resize(2);
  const ExactScalar one_eps{Rational(1) + eps};
  for (std::size_t i = 0; i < 2; ++i) {
    f.domain.types[i].push_back(scheduling::NamedCosts{
        "v" + std::to_string(i + 1), cost_row(3, [&](std::size_t t) -> ExactScalar {
          return (t == i || t == 2) ? ExactScalar(1) : ExactScalar(100);
        })});
    f.domain.types[i].push_back(scheduling::NamedCosts{
        "v'" + std::to_string(i + 1), cost_row(3, [&](std::size_t t) -> ExactScalar {
          if (t == i) return ExactScalar(0);
          if (t == 2) return one_eps;
          return ExactScalar(100);
        })});
  }
  // The truthful profile plus each player's unilateral deviation; the adversary
  // picks whichever deviation the hub allocation exposes.
  f.profiles = {{0, 0}, {1, 0}, {0, 1}};
  f.linked_pairs = {{0, 1, 0}, {0, 2, 1}};
  f.validate();
  return f;
}

namespace {

BoundFamily yao_like_family(std::string id, std::size_t m, const Rational& eps,
                            const ExactScalar& off_value, bool with_distribution) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("need 0 < epsilon < 1");
  BoundFamily f;
  f.id = std::move(id);
  f.machines = m;
  f.tasks = m + 1;
  f.epsilon = eps;
  f.effective_machines = m;
  f.domain.machines = m;
  f.domain.tasks = m + 1;
  f.domain.types.resize(m);
  const ExactScalar one_eps{Rational(1) + eps};
  for (std::size_t i = 0; i < m; ++i) {
    f.domain.types[i].push_back(scheduling::NamedCosts{
        "v" + std::to_string(i + 1), cost_row(m + 1, [&](std::size_t t) -> ExactScalar {
          return (t == i || t == m) ? ExactScalar(1) : off_value;
        })});
    f.domain.types[i].push_back(scheduling::NamedCosts{
        "v'" + std::to_string(i + 1), cost_row(m + 1, [&](std::size_t t) -> ExactScalar {
          if (t == i) return ExactScalar(0);
          if (t == m) return one_eps;
          return off_value;
        })});
  }
  f.profiles.push_back(Profile(m, 0));  // instance I
  for (std::size_t j = 0; j < m; ++j) {
    Profile p(m, 0);
    p[j] = 1;
    f.profiles.push_back(std::move(p));  // instance I^j
    f.linked_pairs.push_back(LinkedPair{0, j + 1, j});
  }
  if (with_distribution) {
    f.probabilities.push_back(eps);
    const Rational each = (Rational(1) - eps) / Rational(static_cast<long long>(m));
    for (std::size_t j = 0; j < m; ++j) f.probabilities.push_back(each);
  }
  f.validate();
  return f;
}

}  // namespace

BoundFamily yao_family(std::size_t m, const Rational& eps) {
  return yao_like_family("thm4", m, eps, ExactScalar(Rational(4) / eps), true);
}

BoundFamily in_expectation_family(std::size_t m, const Rational& eps) {
  return yao_like_family("thm5", m, eps, ExactScalar(Rational(4) / (eps * eps)), false);
}

BoundFamily bayes_family(const Rational& eps, std::size_t m) {
  require_positive_epsilon(eps);
  if (m < 2) throw std::invalid_argument("need m >= 2");
  BoundFamily f;
  f.id = "thm6";
  f.machines = m;
  f.tasks = 3;
  f.epsilon = eps;
  f.effective_machines = 2;
  f.domain.machines = m;
  f.domain.tasks = 3;
  f.domain.types.resize(m);
  const ExactScalar off{Rational(4) / eps};
  const ExactScalar one_eps{Rational(1) + eps};
  for (std::size_t i = 0; i < 2; ++i) {
    f.domain.types[i].push_back(scheduling::NamedCosts{
        "v" + std::to_string(i + 1), cost_row(3, [&](std::size_t t) -> ExactScalar {
          return (t == i || t == 2) ? ExactScalar(1) : off;
        })});
    f.domain.types[i].push_back(scheduling::NamedCosts{
        "v'" + std::to_string(i + 1), cost_row(3, [&](std::size_t t) -> ExactScalar {
          if (t == i) return ExactScalar(0);
          if (t == 2) return one_eps;
          return off;
        })});
  }
  for (std::size_t i = 2; i < m; ++i) {
    f.domain.types[i].push_back(scheduling::NamedCosts{
        "v" + std::to_string(i + 1),
        cost_row(3, [&](std::size_t) { return ExactScalar::infinity(); })});
  }
  const ProfileSpace space = f.domain.profile_space();
  for (std::size_t r = 0; r < space.count(); ++r) f.profiles.push_back(space.at(r));
  f.probabilities.assign(f.profiles.size(), Rational(1, 4));
  // Every unilateral swap of one effective player's type.
  for (std::size_t r = 0; r < f.profiles.size(); ++r) {
    for (std::size_t i = 0; i < 2; ++i) {
      if (f.profiles[r][i] == 0) {
        Profile other = f.profiles[r];
        other[i] = 1;
        f.linked_pairs.push_back(LinkedPair{r, space.rank(other), i});
      }
    }
  }
  f.validate();
  return f;
}

namespace {

/// Per-profile data shared by the searches.
struct FamilyTables {
  std::vector<SchedulingInstance> instances;
  std::vector<ExactScalar> opt;
  std::vector<TaskAllocation> candidates;          // common candidate set
  std::vector<std::vector<ExactScalar>> ratio;     // [profile][candidate]
};

FamilyTables build_tables(const BoundFamily& family, std::size_t budget) {
  family.validate();
  FamilyTables t;
  const std::size_t machines =
      family.effective_machines == 0 ? family.machines : family.effective_machines;
  t.candidates = scheduling::enumerate_allocations(machines, family.tasks, budget);
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    SchedulingInstance inst = family.instance_at(q);
    const ExactScalar opt = scheduling::optimal_makespan(inst, budget).value;
    if (opt.sign() <= 0) throw std::invalid_argument("family instance has nonpositive optimum");
    std::vector<ExactScalar> ratios;
    ratios.reserve(t.candidates.size());
    for (const TaskAllocation& alloc : t.candidates) {
      ratios.push_back(scheduling::makespan(inst, alloc) / opt);
    }
    t.instances.push_back(std::move(inst));
    t.opt.push_back(opt);
    t.ratio.push_back(std::move(ratios));
  }
  return t;
}

bool pair_consistent(const BoundFamily& family, const LinkedPair& pair,
                     const TaskAllocation& at_from, const TaskAllocation& at_to) {
  const std::size_t p = pair.player;
  const auto& v = family.domain.types[p][family.profiles[pair.from][p]].cost;
  const auto& vd = family.domain.types[p][family.profiles[pair.to][p]].cost;
  return monotonicity::wmon_pair_holds(bundle_cost(v, at_from, p), bundle_cost(v, at_to, p),
                                       bundle_cost(vd, at_from, p), bundle_cost(vd, at_to, p),
                                       monotonicity::Direction::cost_minimizing);
}

/// Spoke structure: every linked pair hangs off profile 0.
bool is_star(const BoundFamily& family) {
  for (const LinkedPair& pair : family.linked_pairs) {
    if (pair.from != 0 || pair.to == 0) return false;
  }
  return true;
}

struct Objective {
  bool expected = false;  // worst-case otherwise
};

/// Minimizes either the worst-case or the expected ratio. Exploits the star
/// shape of the deviation links: once the hub allocation is fixed, each spoke
/// profile is optimized independently.
SearchResult search_star(const BoundFamily& family, const FamilyTables& t, Objective obj,
                         const SearchOptions& options) {
  // Constraints per spoke profile.
  std::vector<std::vector<const LinkedPair*>> spoke_pairs(family.profiles.size());
  for (const LinkedPair& pair : family.linked_pairs) spoke_pairs[pair.to].push_back(&pair);

  std::optional<SearchResult> best;
  const std::size_t n_cand = t.candidates.size();
  for (std::size_t hub = 0; hub < n_cand; ++hub) {
    ExactScalar value = obj.expected ? ExactScalar(family.probabilities[0]) * t.ratio[0][hub]
                                     : t.ratio[0][hub];
    FamilyRule rule(family.profiles.size());
    rule[0] = t.candidates[hub];
    for (std::size_t q = 1; q < family.profiles.size(); ++q) {
      std::optional<std::size_t> pick;
      for (std::size_t c = 0; c < n_cand; ++c) {
        if (options.apply_filter) {
          bool ok = true;
          for (const LinkedPair* pair : spoke_pairs[q]) {
            if (!pair_consistent(family, *pair, t.candidates[hub], t.candidates[c])) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
        }
        if (!pick || t.ratio[q][c] < t.ratio[q][*pick]) pick = c;
      }
      // The hub's own allocation is always consistent with itself, so a pick exists.
      rule[q] = t.candidates[*pick];
      if (obj.expected) {
        value += ExactScalar(family.probabilities[q]) * t.ratio[q][*pick];
      } else {
        value = max(value, t.ratio[q][*pick]);
      }
    }
    if (!best || value < best->value) best = SearchResult{std::move(value), std::move(rule)};
  }
  return *best;
}

/// Fallback: full product enumeration over per-profile allocations.
SearchResult search_product(const BoundFamily& family, const FamilyTables& t, Objective obj,
                            const SearchOptions& options) {
  const std::size_t n_cand = t.candidates.size();
  std::size_t total = 1;
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    if (total > options.budget / n_cand) {
      throw BudgetExceeded("rule space exceeds the enumeration budget");
    }
    total *= n_cand;
  }
  std::optional<SearchResult> best;
  std::vector<std::size_t> pick(family.profiles.size(), 0);
  for (std::size_t r = 0; r < total; ++r) {
    bool ok = true;
    if (options.apply_filter) {
      for (const LinkedPair& pair : family.linked_pairs) {
        if (!pair_consistent(family, pair, t.candidates[pick[pair.from]],
                             t.candidates[pick[pair.to]])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      ExactScalar value;
      for (std::size_t q = 0; q < family.profiles.size(); ++q) {
        if (obj.expected) {
          value += ExactScalar(family.probabilities[q]) * t.ratio[q][pick[q]];
        } else {
          value = max(value, t.ratio[q][pick[q]]);
        }
      }
      if (!best || value < best->value) {
        FamilyRule rule;
        rule.reserve(pick.size());
        for (const std::size_t c : pick) rule.push_back(t.candidates[c]);
        best = SearchResult{std::move(value), std::move(rule)};
      }
    }
    for (std::size_t q = pick.size(); q-- > 0;) {
      if (++pick[q] < n_cand) break;
      pick[q] = 0;
    }
  }
  if (!best) throw std::invalid_argument("no consistent rule exists");
  return *best;
}

}  // namespace

SearchResult min_worst_ratio_over_wmon_rules(const BoundFamily& family,
                                             const SearchOptions& options) {
  const FamilyTables t = build_tables(family, options.budget);
  return is_star(family) ? search_star(family, t, Objective{false}, options)
                         : search_product(family, t, Objective{false}, options);
}

SearchResult min_expected_ratio_over_wmon_rules(const BoundFamily& family,
                                                const SearchOptions& options) {
  if (!family.has_distribution()) {
    throw std::invalid_argument("family carries no distribution");
  }
  const FamilyTables t = build_tables(family, options.budget);
  return is_star(family) ? search_star(family, t, Objective{true}, options)
                         : search_product(family, t, Objective{true}, options);
}

namespace {

monotonicity::AllocationRule family_rule_to_allocation_rule(const BoundFamily& family,
                                                            const FamilyTables& t,
                                                            const FamilyRule& rule) {
  const ProfileSpace space = family.domain.profile_space();
  std::vector<std::size_t> choice(space.count());
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    const auto it = std::find(t.candidates.begin(), t.candidates.end(), rule[q]);
    if (it == t.candidates.end()) throw std::invalid_argument("rule uses an unknown allocation");
    choice[space.rank(family.profiles[q])] =
        static_cast<std::size_t>(it - t.candidates.begin());
  }
  return monotonicity::AllocationRule(space, std::move(choice));
}

}  // namespace

bool bayes_rule_feasible(const BoundFamily& family, const FamilyRule& rule) {
  const FamilyTables t = build_tables(family, kDefaultEnumerationBudget);
  const FiniteTypeDomain alt_domain = family.domain.to_alternative_domain(t.candidates);
  const monotonicity::AllocationRule arule = family_rule_to_allocation_rule(family, t, rule);
  std::vector<std::pair<Profile, Rational>> entries;
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    entries.emplace_back(family.profiles[q], family.probabilities[q]);
  }
  const DiscreteDistribution<Profile> prior(std::move(entries));
  for (std::size_t player = 0; player < 2; ++player) {
    if (!monotonicity::bayes_two_cycle_feasible(arule, alt_domain, prior, player, 0, 1,
                                                monotonicity::Direction::cost_minimizing)) {
      return false;
    }
  }
  return true;
}

FamilyRule bayes_case_rule(const BoundFamily& family, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("case rule is 1 or 2");
  // T^1 routes the shared task to machine 0, T^2 to machine 1.
  const TaskAllocation t1{{0, 1, 0}};
  const TaskAllocation t2{{0, 1, 1}};
  FamilyRule rule(family.profiles.size());
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    const Profile& p = family.profiles[q];
    const bool player1_truthful = p[0] == 0;
    if (which == 1) {
      rule[q] = player1_truthful ? t2 : t1;
    } else {
      rule[q] = (p[0] == 1 && p[1] == 0) ? t1 : t2;
    }
  }
  return rule;
}

BicSearchResult min_expected_ratio_over_bic_rules(const BoundFamily& family,
                                                  const SearchOptions& options) {
  if (!family.has_distribution()) throw std::invalid_argument("family carries no distribution");
  const FamilyTables t = build_tables(family, options.budget);
  const FiniteTypeDomain alt_domain = family.domain.to_alternative_domain(t.candidates);
  const ProfileSpace space = family.domain.profile_space();

  std::vector<std::pair<Profile, Rational>> entries;
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    entries.emplace_back(family.profiles[q], family.probabilities[q]);
  }
  const DiscreteDistribution<Profile> prior(std::move(entries));

  const std::size_t n_cand = t.candidates.size();
  const std::size_t n_prof = family.profiles.size();
  std::size_t total = 1;
  for (std::size_t q = 0; q < n_prof; ++q) {
    if (total > options.budget / n_cand) {
      throw BudgetExceeded("rule space exceeds the enumeration budget");
    }
    total *= n_cand;
  }

  auto feasible = [&](const std::vector<std::size_t>& pick) {
    std::vector<std::size_t> choice(space.count());
    for (std::size_t q = 0; q < n_prof; ++q) choice[space.rank(family.profiles[q])] = pick[q];
    const monotonicity::AllocationRule arule(space, std::move(choice));
    for (std::size_t player = 0; player < 2; ++player) {
      if (!monotonicity::bayes_two_cycle_feasible(arule, alt_domain, prior, player, 0, 1,
                                                  monotonicity::Direction::cost_minimizing)) {
        return false;
      }
    }
    return true;
  };

  BicSearchResult result;
  std::optional<ExactScalar> best;
  std::vector<std::size_t> pick(n_prof, 0);
  for (std::size_t r = 0; r < total; ++r) {
    if (!options.apply_filter || feasible(pick)) {
      ExactScalar value;
      for (std::size_t q = 0; q < n_prof; ++q) {
        value += ExactScalar(family.probabilities[q]) * t.ratio[q][pick[q]];
      }
      if (!best || value < *best) {
        best = value;
        result.certificate.clear();
        for (const std::size_t c : pick) result.certificate.push_back(t.candidates[c]);
      }
    }
    for (std::size_t q = pick.size(); q-- > 0;) {
      if (++pick[q] < n_cand) break;
      pick[q] = 0;
    }
  }
  if (!best) throw std::invalid_argument("no feasible rule exists");
  result.value = *best;
  result.case1_feasible = bayes_rule_feasible(family, bayes_case_rule(family, 1));
  result.case2_feasible = bayes_rule_feasible(family, bayes_case_rule(family, 2));
  return result;
}

ExactScalar family_worst_ratio(const BoundFamily& family, const FamilyRule& rule,
                               std::size_t budget) {
  if (rule.size() != family.profiles.size()) throw std::invalid_argument("rule length mismatch");
  ExactScalar worst;
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    const SchedulingInstance inst = family.instance_at(q);
    const ExactScalar opt = scheduling::optimal_makespan(inst, budget).value;
    worst = max(worst, scheduling::makespan(inst, rule[q]) / opt);
  }
  return worst;
}

ExactScalar family_expected_ratio(const BoundFamily& family, const FamilyRule& rule,
                                  std::size_t budget) {
  if (!family.has_distribution()) throw std::invalid_argument("family carries no distribution");
  if (rule.size() != family.profiles.size()) throw std::invalid_argument("rule length mismatch");
  ExactScalar value;
  for (std::size_t q = 0; q < family.profiles.size(); ++q) {
    const SchedulingInstance inst = family.instance_at(q);
    const ExactScalar opt = scheduling::optimal_makespan(inst, budget).value;
    value += ExactScalar(family.probabilities[q]) * (scheduling::makespan(inst, rule[q]) / opt);
  }
  return value;
}

bool family_rule_wmon_consistent(const BoundFamily& family, const FamilyRule& rule) {
  if (rule.size() != family.profiles.size()) throw std::invalid_argument("rule length mismatch");
  for (const LinkedPair& pair : family.linked_pairs) {
    if (!pair_consistent(family, pair, rule[pair.from], rule[pair.to])) return false;
  }
  return true;
}

namespace {

/// Exact solution of a square linear system; nullopt when singular.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational lead = a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] /= lead;
    b[col] /= lead;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  return b;
}

struct HalfSpace {
  std::vector<Rational> coeff;  // coeff . x <= rhs
  Rational rhs;
};

}  // namespace

ExactScalar lemma3_max_marginal(std::size_t m, const Rational& eps,
                                bool force_equal_distributions) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("need 0 < epsilon < 1");

  // Variables (x1, x2, y1, y2) = (p_rr(P), p_{r,m+1}(P), p_rr(P^r), p_{r,m+1}(P^r)).
  std::vector<HalfSpace> cons;
  cons.push_back({{1, -eps, -1, eps}, 0});  // the reduced extended-monotonicity inequality
  for (std::size_t v = 0; v < 4; ++v) {
    std::vector<Rational> up(4, Rational(0)), down(4, Rational(0));
    up[v] = 1;
    down[v] = -1;
    cons.push_back({up, 1});
    cons.push_back({down, 0});
  }
  {
    std::vector<Rational> c(4, Rational(0));
    c[0] = -1;  // x1 >= 1 - eps^2
    cons.push_back({c, -(Rational(1) - eps * eps)});
  }
  {
    std::vector<Rational> c(4, Rational(0));
    c[1] = 1;  // x2 <= 1/m
    cons.push_back({c, Rational(1, static_cast<long long>(m))});
  }
  if (force_equal_distributions) {
    for (std::size_t v : {std::size_t(0), std::size_t(1)}) {
      std::vector<Rational> fwd(4, Rational(0)), bwd(4, Rational(0));
      fwd[v] = 1;
      fwd[v + 2] = -1;
      bwd[v] = -1;
      bwd[v + 2] = 1;
      cons.push_back({fwd, 0});
      cons.push_back({bwd, 0});
    }
  }

  std::optional<Rational> best;
  const std::size_t n = cons.size();
  std::vector<std::size_t> idx{0, 1, 2, 3};
  // Vertex enumeration: every optimum of a bounded feasible LP sits on a
  // vertex, i.e. an intersection of four independent tight constraints.
  for (idx[0] = 0; idx[0] < n; ++idx[0]) {
    for (idx[1] = idx[0] + 1; idx[1] < n; ++idx[1]) {
      for (idx[2] = idx[1] + 1; idx[2] < n; ++idx[2]) {
        for (idx[3] = idx[2] + 1; idx[3] < n; ++idx[3]) {
          std::vector<std::vector<Rational>> a;
          std::vector<Rational> b;
          for (const std::size_t i : idx) {
            a.push_back(cons[i].coeff);
            b.push_back(cons[i].rhs);
          }
          const auto x = solve_linear(std::move(a), std::move(b));
          if (!x) continue;
          bool ok = true;
          for (const HalfSpace& h : cons) {
            Rational dot = 0;
            for (std::size_t v = 0; v < 4; ++v) dot += h.coeff[v] * (*x)[v];
            if (dot > h.rhs) {
              ok = false;
              break;
            }
          }
          if (ok && (!best || (*x)[3] > *best)) best = (*x)[3];
        }
      }
    }
  }
  if (!best) throw std::logic_error("the marginal polytope is empty");
  return ExactScalar(*best);
}

namespace {

TaskAllocation query(const AllocationMechanism& mechanism, const SchedulingInstance& inst) {
  TaskAllocation alloc = mechanism(inst);
  if (alloc.machine_of.size() != inst.tasks) {
    throw std::invalid_argument("mechanism returned an allocation of the wrong length");
  }
  for (const std::size_t i : alloc.machine_of) {
    if (i >= inst.machines) {
      throw std::invalid_argument("mechanism allocated a task to a missing machine");
    }
  }
  return alloc;
}

}  // namespace

SmonAdversaryResult smon_adversary(const AllocationMechanism& mechanism, std::size_t m,
                                   std::size_t opt_budget) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  const std::size_t n = m * m;
  SchedulingInstance inst;
  inst.machines = m;
  inst.tasks = n;
  inst.cost.assign(m, std::vector<ExactScalar>(n, ExactScalar(1)));

  const TaskAllocation s = query(mechanism, inst);
  std::vector<std::vector<std::size_t>> bundles(m);
  for (std::size_t i = 0; i < m; ++i) bundles[i] = s.bundle_of(i);

  std::size_t r = 0;
  while (r < m && bundles[r].size() < m) ++r;
  if (r == m) throw std::logic_error("pigeonhole failed: no machine holds m tasks");

  SmonAdversaryResult result{};
  TaskAllocation current = s;

  auto run_query = [&](std::size_t player) {
    current = query(mechanism, inst);
    if (!(current == s)) {
      result.violations.push_back(SmonViolationWitness{player, s, current});
    }
  };

  // Zero every other machine out on its own bundle, one machine at a time; a
  // strongly monotone mechanism must keep the allocation fixed throughout.
  for (std::size_t i = 0; i < m && result.violations.empty(); ++i) {
    if (i == r || bundles[i].empty()) continue;
    for (std::size_t j = 0; j < n; ++j) inst.cost[i][j] = ExactScalar(1);
    for (const std::size_t j : bundles[i]) inst.cost[i][j] = ExactScalar(0);
    run_query(i);
  }

  if (result.violations.empty()) {
    // Keep m tasks of machine r's bundle expensive and make the rest free.
    std::vector<std::size_t> keep(bundles[r].begin(), bundles[r].begin() + m);
    for (std::size_t j = 0; j < n; ++j) inst.cost[r][j] = ExactScalar(1);
    for (const std::size_t j : bundles[r]) inst.cost[r][j] = ExactScalar(0);
    for (const std::size_t j : keep) inst.cost[r][j] = ExactScalar(1);
    run_query(r);
  }

  result.final_instance = inst;
  result.final_allocation = current;
  result.mechanism_makespan = scheduling::makespan(inst, current);
  result.optimal_makespan = scheduling::optimal_makespan(inst, opt_budget).value;
  result.ratio = result.mechanism_makespan / result.optimal_makespan;
  return result;
}

}  // namespace truthlab::lowerbounds
