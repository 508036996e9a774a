#pragma once

#include <mps/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mps {

enum class Sense { LessEqual, GreaterEqual, Equal };

enum class VarKind { EdgeDeletion, Cycle, TreeNode, TreeArc, Auxiliary };

/// Constraint family a row belongs to (used for statistics and tests).
enum class RowClass {
  Euler,
  EdgeCapacity,
  CycleConstraint,
  TreeArc,
  TreePropagation,
  TreeLabel,
  Kuratowski,
  GeneralizedEuler,
  CycleEdge,
  TwoCyclesPath,
  CycleTwoPaths,
  KuratowskiCycle,
  CycleClique,
  Objective,
  Other
};

inline const char* to_string(RowClass c) {
  switch (c) {
    case RowClass::Euler: return "euler";
    case RowClass::EdgeCapacity: return "edge_capacity";
    case RowClass::CycleConstraint: return "cycle_constraint";
    case RowClass::TreeArc: return "tree_arc";
    case RowClass::TreePropagation: return "tree_propagation";
    case RowClass::TreeLabel: return "tree_label";
    case RowClass::Kuratowski: return "kuratowski";
    case RowClass::GeneralizedEuler: return "generalized_euler";
    case RowClass::CycleEdge: return "cycle_edge";
    case RowClass::TwoCyclesPath: return "two_cycles_path";
    case RowClass::CycleTwoPaths: return "cycle_two_paths";
    case RowClass::KuratowskiCycle: return "kuratowski_cycle";
    case RowClass::CycleClique: return "cycle_clique";
    case RowClass::Objective: return "objective";
    case RowClass::Other: return "other";
  }
  return "other";
}

struct Term {
  int var;
  Rational coef;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::GreaterEqual;
  Rational rhs = 0;
  RowClass cls = RowClass::Other;

  /// Sorts terms by variable, merges duplicates and drops zeros.
  void normalize() {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
    std::vector<Term> merged;
    for (auto& t : terms) {
      if (!merged.empty() && merged.back().var == t.var)
        merged.back().coef += t.coef;
      else
        merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
    terms = std::move(merged);
  }

  template <class T>
  T activity(std::span<const T> values) const {
    T sum = 0;
    for (const auto& t : terms) sum += convert<T>(t.coef) * values[static_cast<std::size_t>(t.var)];
    return sum;
  }

  /// Amount by which `values` violates the row (<= 0 when satisfied).
  template <class T>
  T violation(std::span<const T> values) const {
    T act = activity(values);
    T r = convert<T>(rhs);
    switch (sense) {
      case Sense::LessEqual: return act - r;
      case Sense::GreaterEqual: return r - act;
      case Sense::Equal: return act > r ? T(act - r) : T(r - act);
    }
    return T(0);
  }

  template <class T>
  static T convert(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>)
      return q;
    else
      return static_cast<T>(q.get_d());
  }

  /// Hash of the normalized row, for pool deduplication.
  std::size_t hash() const {
    std::size_t h = std::hash<int>()(static_cast<int>(sense));
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (const auto& t : terms) {
      mix(std::hash<int>()(t.var));
      mix(std::hash<std::string>()(t.coef.get_str()));
    }
    mix(std::hash<std::string>()(rhs.get_str()));
    return h;
  }

  friend bool operator==(const Row& a, const Row& b) {
    if (a.sense != b.sense || a.rhs != b.rhs || a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
      if (a.terms[i].var != b.terms[i].var || a.terms[i].coef != b.terms[i].coef) return false;
    return true;
  }
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::Auxiliary;
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
  Rational objective = 0;
  bool integral = false;
};

/// Minimization LP: variables with optional bounds, sparse rows.
class LinearModel {
 public:
  int add_variable(Variable v) {
    vars_.push_back(std::move(v));
    return static_cast<int>(vars_.size()) - 1;
  }

  int add_row(Row r) {
    r.normalize();
    for (const auto& t : r.terms)
      if (t.var < 0 || t.var >= num_vars()) throw std::out_of_range("row references unknown variable");
    rows_.push_back(std::move(r));
    return static_cast<int>(rows_.size()) - 1;
  }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& var(int j) const { return vars_.at(static_cast<std::size_t>(j)); }
  Variable& var(int j) { return vars_.at(static_cast<std::size_t>(j)); }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }

  template <class T>
  T objective_value(std::span<const T> values) const {
    T sum = 0;
    for (std::size_t j = 0; j < vars_.size(); ++j)
      if (vars_[j].objective != 0) sum += Row::convert<T>(vars_[j].objective) * values[j];
    return sum;
  }

  /// CPLEX-LP text dump for cross-checking with external solvers.
  void write_lp(std::ostream& os) const {
    auto name = [&](int j) { return vars_[static_cast<std::size_t>(j)].name.empty() ? "x" + std::to_string(j)
                                                                                   : vars_[static_cast<std::size_t>(j)].name; };
    auto term = [&](const Rational& c, int j, bool first) {
      std::string s;
      if (c < 0) s += first ? "- " : " - ";
      else if (!first) s += " + ";
      Rational a = abs(c);
      if (a != 1) s += a.get_den() == 1 ? a.get_str() + " " : std::to_string(a.get_d()) + " ";
      return s + name(j);
    };
    os << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < num_vars(); ++j)
      if (vars_[j].objective != 0) {
        os << ' ' << term(vars_[j].objective, j, first);
        first = false;
      }
    if (first) os << " 0";
    os << "\nSubject To\n";
    for (int i = 0; i < num_rows(); ++i) {
      const Row& r = rows_[i];
      os << " r" << i << '_' << to_string(r.cls) << ':';
      bool f = true;
      for (const auto& t : r.terms) {
        os << ' ' << term(t.coef, t.var, f);
        f = false;
      }
      if (f) os << " 0 " << name(0);
      os << (r.sense == Sense::LessEqual ? " <= " : r.sense == Sense::GreaterEqual ? " >= " : " = ")
         << r.rhs.get_d() << '\n';
    }
    os << "Bounds\n";
    for (int j = 0; j < num_vars(); ++j) {
      const auto& v = vars_[j];
      os << ' ' << (v.lower ? std::to_string(v.lower->get_d()) : "-inf") << " <= " << name(j) << " <= "
         << (v.upper ? std::to_string(v.upper->get_d()) : "+inf") << '\n';
    }
    bool any_int = std::any_of(vars_.begin(), vars_.end(), [](const Variable& v) { return v.integral; });
    if (any_int) {
      os << "General\n";
      for (int j = 0; j < num_vars(); ++j)
        if (vars_[j].integral) os << ' ' << name(j) << '\n';
    }
    os << "End\n";
  }

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

template <class T>
struct NumTraits;

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static double feasibility_tol() { return 1e-9; }
  static double optimality_tol() { return 1e-7; }
  static double pivot_tol() { return 1e-9; }
  static double zero_tol() { return 1e-13; }
  static double abs(double x) { return std::fabs(x); }
  static double from(const Rational& q) { return q.get_d(); }
};

template <>
struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static Rational feasibility_tol() { return 0; }
  static Rational optimality_tol() { return 0; }
  static Rational pivot_tol() { return 0; }
  static Rational zero_tol() { return 0; }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static Rational from(const Rational& q) { return q; }
};

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  T objective = 0;
  std::vector<T> values;  ///< structural variables
  std::vector<T> duals;   ///< per row, at optimality
  std::vector<T> farkas;  ///< per row, when infeasible
};

struct SimplexOptions {
  long iteration_limit = 200000;
  int refactor_interval = 100;
  int degenerate_switch = 50;  ///< degenerate pivots before falling back to Bland's rule
};

/// Dense-tableau bounded-variable simplex over T (double or exact Rational).
/// Each row i is written as a_i x - r_i = 0 with a bounded row activity r_i, so
/// the activities form the initial basis. Primal phases 1 and 2 use Dantzig
/// pricing with Bland fallback; a dual simplex re-optimizes after rows are
/// appended or bounds change.
template <class T>
class Simplex {
  using Tr = NumTraits<T>;
  enum class State : unsigned char { Basic, Lower, Upper, Zero };

 public:
  explicit Simplex(const LinearModel& model, SimplexOptions opts = {}) : opts_(opts) {
    n_ = model.num_vars();
    if (n_ < 1) throw std::invalid_argument("LP needs at least one variable");
    for (int j = 0; j < n_; ++j) {
      const auto& v = model.var(j);
      push_column(v.lower, v.upper, Tr::from(v.objective));
    }
    for (const auto& r : model.rows()) add_row(r);
  }

  int num_rows() const { return m_; }
  int num_structural() const { return n_; }

  /// Appends a row; the current basis stays dual feasible.
  void add_row(const Row& row) {
    const int newcol = n_ + m_;
    std::optional<Rational> lo, hi;
    if (row.sense != Sense::LessEqual) lo = row.rhs;
    if (row.sense != Sense::GreaterEqual) hi = row.rhs;
    push_column(lo, hi, T(0));
    for (auto& tr : tab_) tr.push_back(T(0));
    std::vector<std::pair<int, T>> sparse;
    for (const auto& t : row.terms) {
      if (t.var >= n_) throw std::out_of_range("row references unknown variable");
      sparse.emplace_back(t.var, Tr::from(t.coef));
    }
    std::vector<T> tr(static_cast<std::size_t>(newcol + 1), T(0));
    for (const auto& [j, a] : sparse) tr[j] = a;
    tr[newcol] = T(-1);
    // Eliminate the basic columns.
    for (int i = 0; i < m_; ++i) {
      int b = basis_[i];
      if (b >= n_ || tr[b] == 0) continue;
      T f = tr[b];
      const auto& ti = tab_[i];
      for (std::size_t k = 0; k < ti.size(); ++k)
        if (ti[k] != 0) tr[k] -= f * ti[k];
      tr[b] = 0;
    }
    for (auto& v : tr) v = -v;
    clean(tr);
    tab_.push_back(std::move(tr));
    rows_.push_back(std::move(sparse));
    basis_.push_back(newcol);
    state_[newcol] = State::Basic;
    ++m_;
    T act = 0;
    for (const auto& [j, a] : rows_.back()) act += a * x_[j];
    x_[newcol] = act;
    d_[newcol] = 0;
  }

  void set_bounds(int j, std::optional<Rational> lo, std::optional<Rational> hi) {
    has_lo_[j] = lo.has_value();
    has_hi_[j] = hi.has_value();
    lo_[j] = lo ? Tr::from(*lo) : T(0);
    hi_[j] = hi ? Tr::from(*hi) : T(0);
    if (state_[j] != State::Basic) state_[j] = default_state(j);
  }

  LpStatus solve() {
    iterations_ = 0;
    status_ = run();
    if constexpr (!Tr::exact) {
      // Verify after a fresh factorization; retry a few times on drift.
      for (int attempt = 0; attempt < 3 && status_ == LpStatus::Optimal; ++attempt) {
        refactor();
        recompute_x();
        recompute_d();
        if (primal_infeasibility() <= 1e-9 && dual_feasible()) break;
        status_ = run();
      }
    }
    return status_;
  }

  LpStatus status() const { return status_; }
  long iterations() const { return iterations_; }

  std::vector<T> values() const { return {x_.begin(), x_.begin() + n_}; }

  T objective() const {
    T z = 0;
    for (int j = 0; j < n_; ++j)
      if (cost_[j] != 0) z += cost_[j] * x_[j];
    return z;
  }

  /// Row multipliers y = c_B^T B^{-1}.
  std::vector<T> duals() const {
    std::vector<T> cb(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) cb[i] = cost_[basis_[i]];
    return row_multipliers(cb);
  }

  const std::vector<T>& farkas() const { return farkas_; }

  LpSolution<T> solution() const {
    LpSolution<T> s;
    s.status = status_;
    s.values = values();
    s.objective = objective();
    if (status_ == LpStatus::Optimal) s.duals = duals();
    if (status_ == LpStatus::Infeasible) s.farkas = farkas_;
    return s;
  }

 private:
  void push_column(const std::optional<Rational>& lo, const std::optional<Rational>& hi, T cost) {
    has_lo_.push_back(lo.has_value());
    has_hi_.push_back(hi.has_value());
    lo_.push_back(lo ? Tr::from(*lo) : T(0));
    hi_.push_back(hi ? Tr::from(*hi) : T(0));
    cost_.push_back(cost);
    state_.push_back(State::Lower);
    x_.push_back(T(0));
    d_.push_back(cost);
    int j = static_cast<int>(cost_.size()) - 1;
    state_[j] = default_state(j);
    x_[j] = nonbasic_value(j);
  }

  State default_state(int j) const {
    if (has_lo_[j]) return State::Lower;
    if (has_hi_[j]) return State::Upper;
    return State::Zero;
  }

  T nonbasic_value(int j) const {
    switch (state_[j]) {
      case State::Lower: return lo_[j];
      case State::Upper: return hi_[j];
      default: return T(0);
    }
  }

  bool fixed(int j) const { return has_lo_[j] && has_hi_[j] && lo_[j] == hi_[j]; }

  int ncols() const { return n_ + m_; }

  static void clean(std::vector<T>& v) {
    if constexpr (!Tr::exact)
      for (auto& a : v)
        if (std::fabs(a) < Tr::zero_tol()) a = 0;
  }

  void recompute_x() {
    for (int j = 0; j < ncols(); ++j)
      if (state_[j] != State::Basic) {
        if (state_[j] == State::Lower && !has_lo_[j]) state_[j] = default_state(j);
        if (state_[j] == State::Upper && !has_hi_[j]) state_[j] = default_state(j);
        x_[j] = nonbasic_value(j);
      }
    for (int i = 0; i < m_; ++i) {
      T v = 0;
      const auto& ti = tab_[i];
      for (int j = 0; j < ncols(); ++j)
        if (state_[j] != State::Basic && ti[j] != 0 && x_[j] != 0) v -= ti[j] * x_[j];
      x_[basis_[i]] = v;
    }
  }

  void recompute_d() {
    for (int j = 0; j < ncols(); ++j) d_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const T& cb = cost_[basis_[i]];
      if (cb == 0) continue;
      const auto& ti = tab_[i];
      for (int j = 0; j < ncols(); ++j)
        if (ti[j] != 0) d_[j] -= cb * ti[j];
    }
    for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0;
  }

  std::vector<T> row_multipliers(const std::vector<T>& cb) const {
    std::vector<T> y(static_cast<std::size_t>(m_), T(0));
    for (int i = 0; i < m_; ++i) {
      if (cb[i] == 0) continue;
      for (int k = 0; k < m_; ++k)
        if (tab_[i][n_ + k] != 0) y[k] -= cb[i] * tab_[i][n_ + k];
    }
    return y;
  }

  T infeasibility_of(int j) const {
    if (has_lo_[j] && x_[j] < lo_[j] - Tr::feasibility_tol()) return lo_[j] - x_[j];
    if (has_hi_[j] && x_[j] > hi_[j] + Tr::feasibility_tol()) return x_[j] - hi_[j];
    return T(0);
  }

  T primal_infeasibility() const {
    T worst = 0;
    for (int i = 0; i < m_; ++i) worst = std::max(worst, infeasibility_of(basis_[i]));
    return worst;
  }

  bool dual_feasible() const {
    for (int j = 0; j < ncols(); ++j) {
      if (state_[j] == State::Basic || fixed(j)) continue;
      const T& dj = d_[j];
      switch (state_[j]) {
        case State::Lower:
          if (dj < -Tr::optimality_tol()) return false;
          break;
        case State::Upper:
          if (dj > Tr::optimality_tol()) return false;
          break;
        default:
          if (Tr::abs(dj) > Tr::optimality_tol()) return false;
      }
    }
    return true;
  }

  void pivot(int r, int q) {
    auto& tr = tab_[r];
    T piv = tr[q];
    std::vector<int> nz;
    for (int k = 0; k < ncols(); ++k)
      if (tr[k] != 0) {
        tr[k] /= piv;
        nz.push_back(k);
      }
    tr[q] = 1;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      auto& ti = tab_[i];
      if (ti[q] == 0) continue;
      T f = ti[q];
      for (int k : nz) ti[k] -= f * tr[k];
      ti[q] = 0;
      if constexpr (!Tr::exact)
        for (int k : nz)
          if (std::fabs(ti[k]) < Tr::zero_tol()) ti[k] = 0;
    }
    if (d_[q] != 0) {
      T f = d_[q];
      for (int k : nz) d_[k] -= f * tr[k];
    }
    d_[q] = 0;
    int leaving = basis_[r];
    basis_[r] = q;
    state_[q] = State::Basic;
    (void)leaving;
    ++since_refactor_;
  }

  /// Gauss-Jordan rebuild of B^{-1}[A | -I] for the current basis.
  void refactor() {
    const int nc = ncols();
    std::vector<std::vector<T>> M(static_cast<std::size_t>(m_), std::vector<T>(static_cast<std::size_t>(nc), T(0)));
    for (int i = 0; i < m_; ++i) {
      for (const auto& [j, a] : rows_[i]) M[i][j] = a;
      M[i][n_ + i] = T(-1);
    }
    std::vector<int> new_basis(static_cast<std::size_t>(m_), -1);
    std::vector<char> row_done(static_cast<std::size_t>(m_), 0);
    auto eliminate = [&](int p, int c) {
      T piv = M[p][c];
      for (int k = 0; k < nc; ++k)
        if (M[p][k] != 0) M[p][k] /= piv;
      M[p][c] = 1;
      for (int i = 0; i < m_; ++i) {
        if (i == p || M[i][c] == 0) continue;
        T f = M[i][c];
        for (int k = 0; k < nc; ++k)
          if (M[p][k] != 0) M[i][k] -= f * M[p][k];
        M[i][c] = 0;
      }
      row_done[p] = 1;
      new_basis[p] = c;
    };
    std::vector<int> old = basis_;
    for (int c : old) {
      int best = -1;
      T bestv = 0;
      for (int p = 0; p < m_; ++p) {
        if (row_done[p]) continue;
        T v = Tr::abs(M[p][c]);
        if (v > bestv) {
          bestv = v;
          best = p;
        }
      }
      if (best < 0 || bestv <= (Tr::exact ? T(0) : T(1e-9))) {
        state_[c] = default_state(c);
        continue;
      }
      eliminate(best, c);
    }
    for (int p = 0; p < m_; ++p) {
      if (row_done[p]) continue;
      int best = -1;
      T bestv = 0;
      for (int k = 0; k < m_; ++k) {
        int c = n_ + k;
        if (state_[c] == State::Basic && std::find(new_basis.begin(), new_basis.end(), c) != new_basis.end()) continue;
        T v = Tr::abs(M[p][c]);
        if (v > bestv) {
          bestv = v;
          best = c;
        }
      }
      if (best < 0) throw std::runtime_error("refactorization failed");
      eliminate(p, best);
    }
    for (auto& row : M) clean(row);
    for (int c = 0; c < nc; ++c)
      if (state_[c] == State::Basic) state_[c] = default_state(c);
    for (int c : new_basis) state_[c] = State::Basic;
    basis_ = std::move(new_basis);
    tab_ = std::move(M);
    since_refactor_ = 0;
  }

  /// Basic-variable rate of change when x_q moves by +1 in direction dir.
  T rate(int i, int q, int dir) const { return dir > 0 ? T(-tab_[i][q]) : T(tab_[i][q]); }

  void apply_step(int q, int dir, const T& theta) {
    if (theta == 0) return;
    x_[q] += dir > 0 ? theta : T(-theta);
    for (int i = 0; i < m_; ++i) {
      const T& a = tab_[i][q];
      if (a != 0) {
        if (dir > 0)
          x_[basis_[i]] -= a * theta;
        else
          x_[basis_[i]] += a * theta;
      }
    }
  }

  LpStatus run() {
    for (int round = 0; round < 4; ++round) {
      if constexpr (!Tr::exact)
        if (since_refactor_ >= opts_.refactor_interval) refactor();
      recompute_x();
      recompute_d();
      if (primal_infeasibility() == 0 || (!Tr::exact && primal_infeasibility() <= Tr::feasibility_tol()))
        return primal(false);
      if (dual_feasible()) {
        LpStatus s = dual();
        if (s != LpStatus::IterationLimit) {
          if (s == LpStatus::Optimal) return primal(false);  // polishes residual drift
          return s;
        }
        if (iterations_ >= opts_.iteration_limit) return s;
        recompute_x();
        recompute_d();
      }
      LpStatus s = primal(true);
      if (s != LpStatus::Optimal) return s;
      recompute_d();
      s = primal(false);
      if (s != LpStatus::Infeasible) return s;
      // Phase 2 lost feasibility through drift: refactor and retry.
      if constexpr (Tr::exact) return s;
      refactor();
    }
    return LpStatus::IterationLimit;
  }

  /// Primal simplex. Phase 1 minimizes the sum of bound violations of basic variables.
  LpStatus primal(bool phase1) {
    int degenerate = 0;
    bool bland = false;
    std::vector<T> cb1, d1;
    while (true) {
      if (iterations_ >= opts_.iteration_limit) return LpStatus::IterationLimit;
      if constexpr (!Tr::exact)
        if (since_refactor_ >= opts_.refactor_interval) {
          refactor();
          recompute_x();
          recompute_d();
        }
      const std::vector<T>* dd = &d_;
      if (phase1) {
        cb1.assign(static_cast<std::size_t>(m_), T(0));
        bool any = false;
        for (int i = 0; i < m_; ++i) {
          int b = basis_[i];
          if (has_lo_[b] && x_[b] < lo_[b] - Tr::feasibility_tol()) {
            cb1[i] = -1;
            any = true;
          } else if (has_hi_[b] && x_[b] > hi_[b] + Tr::feasibility_tol()) {
            cb1[i] = 1;
            any = true;
          }
        }
        if (!any) return LpStatus::Optimal;
        d1.assign(static_cast<std::size_t>(ncols()), T(0));
        for (int i = 0; i < m_; ++i) {
          if (cb1[i] == 0) continue;
          const auto& ti = tab_[i];
          for (int j = 0; j < ncols(); ++j)
            if (ti[j] != 0) d1[j] -= cb1[i] * ti[j];
        }
        for (int i = 0; i < m_; ++i) d1[basis_[i]] = 0;
        dd = &d1;
      }
      // Pricing.
      int q = -1, dir = 0;
      T best = 0;
      for (int j = 0; j < ncols(); ++j) {
        if (state_[j] == State::Basic || fixed(j)) continue;
        const T& dj = (*dd)[j];
        int cand = 0;
        if (dj < -Tr::optimality_tol() && (state_[j] == State::Lower || state_[j] == State::Zero)) cand = 1;
        else if (dj > Tr::optimality_tol() && (state_[j] == State::Upper || state_[j] == State::Zero)) cand = -1;
        if (!cand) continue;
        if (bland) {
          q = j;
          dir = cand;
          break;
        }
        T mag = Tr::abs(dj);
        if (mag > best) {
          best = mag;
          q = j;
          dir = cand;
        }
      }
      if (q < 0) {
        if (phase1) {
          farkas_ = row_multipliers(cb1);
          return LpStatus::Infeasible;
        }
        return LpStatus::Optimal;
      }
      // Ratio test.
      int r = -1;
      bool to_upper = false;
      T theta = 0, r_alpha = 0;
      bool bounded = false;
      for (int i = 0; i < m_; ++i) {
        T a = rate(i, q, dir);
        if (Tr::abs(a) <= Tr::pivot_tol()) continue;
        int b = basis_[i];
        const T& xb = x_[b];
        T t;
        bool up;
        if (a > 0) {
          if (has_lo_[b] && xb < lo_[b] - Tr::feasibility_tol()) {
            t = (lo_[b] - xb) / a;
            up = false;
          } else if (has_hi_[b] && !(xb > hi_[b] + Tr::feasibility_tol())) {
            t = (hi_[b] - xb) / a;
            up = true;
          } else {
            continue;
          }
        } else {
          if (has_hi_[b] && xb > hi_[b] + Tr::feasibility_tol()) {
            t = (hi_[b] - xb) / a;
            up = true;
          } else if (has_lo_[b] && !(xb < lo_[b] - Tr::feasibility_tol())) {
            t = (lo_[b] - xb) / a;
            up = false;
          } else {
            continue;
          }
        }
        if (t < 0) t = 0;
        bool take = false;
        if (!bounded) take = true;
        else if (bland) take = t < theta || (t == theta && basis_[i] < basis_[r]);
        else if constexpr (Tr::exact) take = t < theta || (t == theta && Tr::abs(a) > Tr::abs(r_alpha));
        else take = t < theta - 1e-12 || (t <= theta + 1e-12 && Tr::abs(a) > Tr::abs(r_alpha));
        if (take) {
          bounded = true;
          theta = t;
          r = i;
          to_upper = up;
          r_alpha = a;
        }
      }
      bool can_flip = has_lo_[q] && has_hi_[q];
      T flip = can_flip ? T(hi_[q] - lo_[q]) : T(0);
      ++iterations_;
      if (can_flip && (!bounded || flip <= theta)) {
        apply_step(q, dir, flip);
        state_[q] = dir > 0 ? State::Upper : State::Lower;
        x_[q] = nonbasic_value(q);
        degenerate = 0;
        continue;
      }
      if (!bounded) {
        if (phase1) return LpStatus::IterationLimit;  // cannot happen with exact arithmetic
        return LpStatus::Unbounded;
      }
      if (theta == 0 || (!Tr::exact && theta < 1e-12)) {
        if (++degenerate > opts_.degenerate_switch) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      apply_step(q, dir, theta);
      int leaving = basis_[r];
      pivot(r, q);
      state_[leaving] = to_upper ? State::Upper : State::Lower;
      x_[leaving] = nonbasic_value(leaving);
      if (!phase1 && !Tr::exact) {
        // keep reduced costs exact on the entering column
        d_[q] = 0;
      }
    }
  }

  /// Dual simplex from a dual feasible basis.
  LpStatus dual() {
    const long cap = iterations_ + 20L * (m_ + ncols()) + 1000;
    int degenerate = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= opts_.iteration_limit || iterations_ >= cap) return LpStatus::IterationLimit;
      if constexpr (!Tr::exact)
        if (since_refactor_ >= opts_.refactor_interval) {
          refactor();
          recompute_x();
          recompute_d();
          if (!dual_feasible()) return LpStatus::IterationLimit;
        }
      int r = -1;
      T worst = 0;
      for (int i = 0; i < m_; ++i) {
        T inf = infeasibility_of(basis_[i]);
        if (inf <= 0) continue;
        if (bland) {
          if (r < 0 || basis_[i] < basis_[r]) r = i;
        } else if (inf > worst) {
          worst = inf;
          r = i;
        }
      }
      if (r < 0) return LpStatus::Optimal;
      int b = basis_[r];
      bool increase = has_lo_[b] && x_[b] < lo_[b];
      T target = increase ? lo_[b] : hi_[b];
      const auto& tr = tab_[r];
      int q = -1, qdir = 0;
      T best_ratio = 0, best_piv = 0;
      for (int j = 0; j < ncols(); ++j) {
        if (state_[j] == State::Basic || fixed(j) || Tr::abs(tr[j]) <= Tr::pivot_tol()) continue;
        // x_b changes by -tr[j] * dir per unit move of x_j
        int dir;
        if (state_[j] == State::Lower) dir = 1;
        else if (state_[j] == State::Upper) dir = -1;
        else dir = ((tr[j] < 0) == increase) ? 1 : -1;
        T change = dir > 0 ? T(-tr[j]) : T(tr[j]);
        if (increase ? !(change > 0) : !(change < 0)) continue;
        T ratio = Tr::abs(d_[j]) / Tr::abs(tr[j]);
        bool take = false;
        if (q < 0) take = true;
        else if (bland) take = ratio < best_ratio || (ratio == best_ratio && j < q);
        else if constexpr (Tr::exact) take = ratio < best_ratio || (ratio == best_ratio && Tr::abs(tr[j]) > best_piv);
        else take = ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && Tr::abs(tr[j]) > best_piv);
        if (take) {
          q = j;
          qdir = dir;
          best_ratio = ratio;
          best_piv = Tr::abs(tr[j]);
        }
      }
      if (q < 0) {
        std::vector<T> cb(static_cast<std::size_t>(m_), T(0));
        cb[r] = 1;
        farkas_ = row_multipliers(cb);
        return LpStatus::Infeasible;
      }
      ++iterations_;
      if (best_ratio == 0 || (!Tr::exact && best_ratio < 1e-12)) {
        if (++degenerate > opts_.degenerate_switch) bland = true;
      } else {
        degenerate = 0;
      }
      T change = qdir > 0 ? T(-tr[q]) : T(tr[q]);
      T theta = (target - x_[b]) / change;
      apply_step(q, qdir, theta);
      pivot(r, q);
      state_[b] = increase ? State::Lower : State::Upper;
      x_[b] = nonbasic_value(b);
    }
  }

  SimplexOptions opts_;
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<std::pair<int, T>>> rows_;
  std::vector<std::vector<T>> tab_;
  std::vector<char> has_lo_, has_hi_;
  std::vector<T> lo_, hi_, cost_, x_, d_;
  std::vector<State> state_;
  std::vector<int> basis_;
  std::vector<T> farkas_;
  LpStatus status_ = LpStatus::IterationLimit;
  long iterations_ = 0;
  int since_refactor_ = 0;
};

template <class T>
LpSolution<T> solve_lp(const LinearModel& model, SimplexOptions opts = {}) {
  Simplex<T> s(model, opts);
  s.solve();
  return s.solution();
}

/// Exact check that row multipliers `y` prove the model's rows and bounds
/// infeasible: the implied identity sum_j (yA)_j x_j - sum_i y_i r_i = 0 cannot
/// hold for any x within its bounds and row activities r within their ranges.
inline bool verify_farkas(const LinearModel& model, std::span<const Rational> y) {
  if (static_cast<int>(y.size()) != model.num_rows()) return false;
  std::vector<Rational> g(static_cast<std::size_t>(model.num_vars()), Rational(0));
  for (int i = 0; i < model.num_rows(); ++i) {
    if (y[i] == 0) continue;
    for (const auto& t : model.rows()[i].terms) g[t.var] += y[i] * t.coef;
  }
  // Interval [lo, hi] of the identity's left side; infinite ends flagged.
  Rational lo = 0, hi = 0;
  bool lo_inf = false, hi_inf = false;
  auto add = [&](const Rational& coef, const std::optional<Rational>& lb, const std::optional<Rational>& ub) {
    if (coef == 0) return;
    const auto& for_min = coef > 0 ? lb : ub;
    const auto& for_max = coef > 0 ? ub : lb;
    if (for_min) lo += coef * *for_min;
    else lo_inf = true;
    if (for_max) hi += coef * *for_max;
    else hi_inf = true;
  };
  for (int j = 0; j < model.num_vars(); ++j) add(g[j], model.var(j).lower, model.var(j).upper);
  for (int i = 0; i < model.num_rows(); ++i) {
    const Row& r = model.rows()[i];
    std::optional<Rational> rl, ru;
    if (r.sense != Sense::LessEqual) rl = r.rhs;
    if (r.sense != Sense::GreaterEqual) ru = r.rhs;
    add(Rational(-y[i]), rl, ru);
  }
  return (!lo_inf && lo > 0) || (!hi_inf && hi < 0);
}

}  // namespace mps
