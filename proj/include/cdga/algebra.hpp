#pragma once

#include <memory>
#include <optional>
#include <string>

#include "cdga/field.hpp"
#include "cdga/graded.hpp"

namespace cdga {

// Basis label of a homogeneous algebra element: degree plus position in the
// ordered basis of that degree.
struct AlgLabel {
  int deg = 0;
  int idx = 0;
  auto operator<=>(const AlgLabel&) const = default;
};

// Finitely supported k-linear combination of basis labels.
template <class K>
using AlgElem = std::map<AlgLabel, K>;

template <class K>
void elem_add_term(AlgElem<K>& e, const AlgLabel& l, const K& coeff) {
  if (coeff == K(0)) return;
  auto it = e.find(l);
  if (it == e.end()) {
    e.emplace(l, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == K(0)) e.erase(it);
}

template <class K>
AlgElem<K> elem_scale(const AlgElem<K>& a, const K& s) {
  AlgElem<K> r;
  for (auto& [l, v] : a) elem_add_term(r, l, s * v);
  return r;
}

template <class K>
AlgElem<K> elem_add(const AlgElem<K>& a, const AlgElem<K>& b) {
  AlgElem<K> r = a;
  for (auto& [l, v] : b) elem_add_term(r, l, v);
  return r;
}

template <class K>
AlgElem<K> elem_sub(const AlgElem<K>& a, const AlgElem<K>& b) {
  return elem_add(a, elem_scale(b, K(-1)));
}

// Homogeneous degree; nullopt for the zero element, error when mixed.
template <class K>
std::optional<int> elem_deg(const AlgElem<K>& e) {
  std::optional<int> d;
  for (auto& [l, v] : e) {
    if (d && *d != l.deg) throw UsageError("inhomogeneous algebra element");
    d = l.deg;
  }
  return d;
}

inline bool deg_is_odd(int d) { return norm_deg(Grading::Z2, d) == 1; }

template <class K>
K koszul_sign(int d) {
  return deg_is_odd(d) ? K(-1) : K(1);
}

enum class Rho { Zero, One, Eps };

inline std::string rho_str(Rho r) {
  switch (r) {
    case Rho::Zero: return "0";
    case Rho::One: return "1";
    default: return "eps";
  }
}

// Explicit finite presentation: named basis per degree, structure constants,
// differential table, curvature, and a token factorization of every basis
// element into the listed generators (used to transport module actions).
template <class K>
struct AlgebraTable {
  Grading grading = Grading::Z;
  std::map<int, std::vector<std::string>> names;
  std::map<std::pair<AlgLabel, AlgLabel>, AlgElem<K>> mul;  // absent = 0; unit implicit
  std::map<AlgLabel, AlgElem<K>> diff;                      // absent = 0
  AlgElem<K> curvature;
  AlgLabel unit{0, 0};
  std::vector<std::pair<std::string, AlgLabel>> gens;
  std::map<AlgLabel, std::vector<std::string>> factors;

  bool operator==(const AlgebraTable&) const = default;
};

// Square-zero deformation datum (t0, t1, t2): a degree-2 element, a linear
// endo-component raising degree by 1, and a bilinear component of degree 0.
template <class K>
struct Cocycle {
  AlgElem<K> t0;
  std::map<AlgLabel, AlgElem<K>> t1;
  std::map<std::pair<AlgLabel, AlgLabel>, AlgElem<K>> t2;

  bool operator==(const Cocycle&) const = default;
};

template <class K>
class CdgAlgebra {
 public:
  enum class Family { Base, InitialPoly, InitialTrunc, DualNumbers, PolyU, Z2Rho, Table, Deformed };

  using Ptr = std::shared_ptr<const CdgAlgebra<K>>;

  static Ptr base() { return Ptr(new CdgAlgebra(Family::Base)); }

  static Ptr initial_poly() { return Ptr(new CdgAlgebra(Family::InitialPoly)); }

  static Ptr initial_trunc(int n) {
    if (n < 1) throw UsageError("truncation index must be >= 1");
    auto* a = new CdgAlgebra(Family::InitialTrunc);
    a->trunc_ = n;
    return Ptr(a);
  }

  static Ptr dual_numbers() {
    auto* a = new CdgAlgebra(Family::DualNumbers);
    a->with_eps_ = true;
    return Ptr(a);
  }

  static Ptr poly_u(bool with_eps, Rho rho) {
    if (rho == Rho::Eps && !with_eps)
      throw UsageError("rho = eps requires the eps-extended coefficient ring");
    auto* a = new CdgAlgebra(Family::PolyU);
    a->with_eps_ = with_eps;
    a->rho_ = rho;
    return Ptr(a);
  }

  static Ptr z2_rho(bool with_eps, Rho rho) {
    if (rho == Rho::Eps && !with_eps)
      throw UsageError("rho = eps requires the eps-extended coefficient ring");
    auto* a = new CdgAlgebra(Family::Z2Rho);
    a->with_eps_ = with_eps;
    a->rho_ = rho;
    a->grading_ = Grading::Z2;
    return Ptr(a);
  }

  static Ptr table(AlgebraTable<K> t) {
    auto* a = new CdgAlgebra(Family::Table);
    a->grading_ = t.grading;
    a->table_ = std::move(t);
    a->validate_table();
    return Ptr(a);
  }

  static Ptr deformed(Ptr base_alg, Cocycle<K> cocycle) {
    if (!base_alg) throw UsageError("deformation needs a base algebra");
    auto* a = new CdgAlgebra(Family::Deformed);
    a->grading_ = base_alg->grading();
    a->base_ = std::move(base_alg);
    a->cocycle_ = std::move(cocycle);
    a->validate_deformation();
    return Ptr(a);
  }

  Family family() const { return family_; }
  Grading grading() const { return grading_; }
  int trunc() const { return trunc_; }
  bool with_eps() const { return with_eps_; }
  Rho rho() const { return rho_; }
  Ptr deformation_base() const { return base_; }
  const Cocycle<K>& cocycle_data() const { return cocycle_; }

  AlgLabel unit_label() const {
    return family_ == Family::Table ? table_.unit : AlgLabel{0, 0};
  }
  AlgElem<K> one() const { return {{unit_label(), K(1)}}; }

  int dim(int deg) const {
    int d = norm_deg(grading_, deg);
    switch (family_) {
      case Family::Base: return d == 0 ? 1 : 0;
      case Family::InitialPoly: return (d >= 0 && d % 2 == 0) ? 1 : 0;
      case Family::InitialTrunc: return (d >= 0 && d % 2 == 0 && d < 2 * trunc_) ? 1 : 0;
      case Family::DualNumbers: return d == 0 ? 2 : 0;
      case Family::PolyU: return (d >= 0 && d % 2 == 0) ? (with_eps_ ? 2 : 1) : 0;
      case Family::Z2Rho: return d == 0 ? (with_eps_ ? 2 : 1) : 0;
      case Family::Table: {
        auto it = table_.names.find(d);
        return it == table_.names.end() ? 0 : (int)it->second.size();
      }
      case Family::Deformed: return 2 * base_->dim(d);
    }
    return 0;
  }

  std::vector<AlgLabel> basis(int deg) const {
    int d = norm_deg(grading_, deg);
    std::vector<AlgLabel> out;
    for (int i = 0; i < dim(d); ++i) out.push_back({d, i});
    return out;
  }

  std::string name(AlgLabel l) const {
    check_label(l);
    switch (family_) {
      case Family::Base: return "1";
      case Family::InitialPoly:
      case Family::InitialTrunc: return power_name("c", l.deg / 2);
      case Family::DualNumbers:
      case Family::Z2Rho: return l.idx == 0 ? "1" : "eps";
      case Family::PolyU: {
        std::string u = power_name("u", l.deg / 2);
        if (l.idx == 0) return u;
        return u == "1" ? "eps" : "eps*" + u;
      }
      case Family::Table: return table_.names.at(norm_deg(grading_, l.deg))[l.idx];
      case Family::Deformed: {
        auto [bl, eps] = split_label(l);
        std::string bn = base_->name(bl);
        if (!eps) return bn;
        return bn == "1" ? "eps" : bn + "*eps";
      }
    }
    return "?";
  }

  AlgElem<K> mul(AlgLabel a, AlgLabel b) const {
    check_label(a);
    check_label(b);
    switch (family_) {
      case Family::Base: return one();
      case Family::InitialPoly: return {{{a.deg + b.deg, 0}, K(1)}};
      case Family::InitialTrunc: {
        int d = a.deg + b.deg;
        if (d >= 2 * trunc_) return {};
        return {{{d, 0}, K(1)}};
      }
      case Family::DualNumbers:
      case Family::Z2Rho: {
        if (a.idx + b.idx >= 2) return {};
        return {{{0, a.idx + b.idx}, K(1)}};
      }
      case Family::PolyU: {
        if (a.idx + b.idx >= 2) return {};
        return {{{a.deg + b.deg, a.idx + b.idx}, K(1)}};
      }
      case Family::Table: {
        if (a == table_.unit) return {{b, K(1)}};
        if (b == table_.unit) return {{a, K(1)}};
        auto it = table_.mul.find({a, b});
        return it == table_.mul.end() ? AlgElem<K>{} : it->second;
      }
      case Family::Deformed: {
        auto [xa, ea] = split_label(a);
        auto [xb, eb] = split_label(b);
        if (ea && eb) return {};
        AlgElem<K> r = embed(base_->mul(xa, xb), ea || eb);
        if (!ea && !eb) {
          auto it = cocycle_.t2.find({xa, xb});
          if (it != cocycle_.t2.end()) r = elem_add(r, embed(it->second, true));
        }
        return r;
      }
    }
    return {};
  }

  AlgElem<K> mul(const AlgElem<K>& a, const AlgElem<K>& b) const {
    AlgElem<K> r;
    for (auto& [la, va] : a)
      for (auto& [lb, vb] : b)
        for (auto& [l, v] : mul(la, lb)) elem_add_term(r, l, va * vb * v);
    return r;
  }

  AlgElem<K> diff(AlgLabel l) const {
    check_label(l);
    switch (family_) {
      case Family::Table: {
        auto it = table_.diff.find(l);
        return it == table_.diff.end() ? AlgElem<K>{} : it->second;
      }
      case Family::Deformed: {
        auto [bl, eps] = split_label(l);
        AlgElem<K> r = embed(base_->diff(bl), eps);
        if (!eps) {
          auto it = cocycle_.t1.find(bl);
          if (it != cocycle_.t1.end()) r = elem_add(r, embed(it->second, true));
        }
        return r;
      }
      default: return {};
    }
  }

  AlgElem<K> diff(const AlgElem<K>& e) const {
    AlgElem<K> r;
    for (auto& [l, v] : e)
      for (auto& [dl, dv] : diff(l)) elem_add_term(r, dl, v * dv);
    return r;
  }

  AlgElem<K> curvature() const {
    switch (family_) {
      case Family::InitialPoly: return {{{2, 0}, K(1)}};
      case Family::InitialTrunc:
        return trunc_ >= 2 ? AlgElem<K>{{{2, 0}, K(1)}} : AlgElem<K>{};
      case Family::PolyU:
        if (rho_ == Rho::Zero) return {};
        return {{{2, rho_ == Rho::One ? 0 : 1}, K(1)}};
      case Family::Z2Rho:
        if (rho_ == Rho::Zero) return {};
        return {{{0, rho_ == Rho::One ? 0 : 1}, K(1)}};
      case Family::Table: return table_.curvature;
      case Family::Deformed: return embed(cocycle_.t0, true);
      default: return {};
    }
  }

  // Generators whose module actions are stored explicitly. The initial
  // families are absent here on purpose: there c acts through d^2.
  std::vector<std::pair<std::string, int>> action_generators() const {
    switch (family_) {
      case Family::DualNumbers: return {{"eps", 0}};
      case Family::PolyU: {
        std::vector<std::pair<std::string, int>> g{{"u", 2}};
        if (with_eps_) g.push_back({"eps", 0});
        return g;
      }
      case Family::Z2Rho:
        if (with_eps_) return {{"eps", 0}};
        return {};
      case Family::Table: {
        std::vector<std::pair<std::string, int>> g;
        for (auto& [tok, l] : table_.gens) g.push_back({tok, norm_deg(grading_, l.deg)});
        return g;
      }
      case Family::Deformed: {
        auto g = base_->action_generators();
        g.push_back({"eps", 0});
        return g;
      }
      default: return {};
    }
  }

  AlgElem<K> generator_elem(const std::string& token) const {
    switch (family_) {
      case Family::DualNumbers:
      case Family::Z2Rho:
        if (token == "eps" && with_eps_) return {{{0, 1}, K(1)}};
        break;
      case Family::PolyU:
        if (token == "u") return {{{2, 0}, K(1)}};
        if (token == "eps" && with_eps_) return {{{0, 1}, K(1)}};
        break;
      case Family::Table:
        for (auto& [tok, l] : table_.gens)
          if (tok == token) return {{l, K(1)}};
        break;
      case Family::Deformed:
        if (token == "eps") return embed(base_->one(), true);
        return embed(base_->generator_elem(token), false);
      default: break;
    }
    throw UsageError("algebra has no generator '" + token + "'");
  }

  // Token word multiplying out to the basis element; empty for the unit.
  // "c" appears only for the initial families, where modules realize it as
  // the square of their differential.
  std::vector<std::string> factor_tokens(AlgLabel l) const {
    check_label(l);
    switch (family_) {
      case Family::Base: return {};
      case Family::InitialPoly:
      case Family::InitialTrunc: return std::vector<std::string>(l.deg / 2, "c");
      case Family::DualNumbers:
      case Family::Z2Rho:
        return l.idx == 0 ? std::vector<std::string>{} : std::vector<std::string>{"eps"};
      case Family::PolyU: {
        std::vector<std::string> t(l.deg / 2, "u");
        if (l.idx == 1) t.push_back("eps");
        return t;
      }
      case Family::Table: {
        auto it = table_.factors.find(l);
        if (it == table_.factors.end())
          throw UsageError("table algebra lacks a factorization for " + name(l));
        return it->second;
      }
      case Family::Deformed: {
        auto [bl, eps] = split_label(l);
        auto t = base_->factor_tokens(bl);
        if (eps) t.push_back("eps");
        return t;
      }
    }
    return {};
  }

  bool c_via_dsquared() const {
    return family_ == Family::InitialPoly || family_ == Family::InitialTrunc;
  }

  // The quotient by the ideal (eps), for families carrying eps.
  Ptr eps_quotient() const {
    switch (family_) {
      case Family::DualNumbers: return base();
      case Family::PolyU: return poly_u(false, rho_ == Rho::Eps ? Rho::Zero : rho_);
      case Family::Z2Rho: return z2_rho(false, rho_ == Rho::Eps ? Rho::Zero : rho_);
      case Family::Deformed: return base_;
      default: throw UsageError("algebra has no eps to quotient by");
    }
  }

  // For Deformed labels: underlying base label and whether it sits in the
  // eps part. Identity mapping for other families.
  std::pair<AlgLabel, bool> split_label(AlgLabel l) const {
    if (family_ != Family::Deformed) return {l, false};
    int nb = base_->dim(l.deg);
    if (l.idx < nb) return {AlgLabel{l.deg, l.idx}, false};
    return {AlgLabel{l.deg, l.idx - nb}, true};
  }

  AlgElem<K> embed(const AlgElem<K>& base_elem, bool eps) const {
    if (family_ != Family::Deformed) throw UsageError("embed only applies to deformations");
    AlgElem<K> r;
    for (auto& [l, v] : base_elem) {
      int nb = base_->dim(l.deg);
      elem_add_term(r, AlgLabel{l.deg, l.idx + (eps ? nb : 0)}, v);
    }
    return r;
  }

  std::string str() const {
    switch (family_) {
      case Family::Base: return "k";
      case Family::InitialPoly: return "k[c]";
      case Family::InitialTrunc: return "k[c]/c^" + std::to_string(trunc_);
      case Family::DualNumbers: return "k[eps]";
      case Family::PolyU:
        return std::string(with_eps_ ? "k[eps]" : "k") + "[u], rho = " + rho_str(rho_);
      case Family::Z2Rho:
        return std::string("Z/2 ") + (with_eps_ ? "k[eps]" : "k") + ", rho = " + rho_str(rho_);
      case Family::Table: return "table algebra";
      case Family::Deformed: return "deformed " + base_->str() + "[eps]";
    }
    return "?";
  }

  // Degrees carrying a nonzero component; throws for the unbounded families.
  std::vector<int> support_degrees() const { return finite_support(); }

  friend bool operator==(const CdgAlgebra& a, const CdgAlgebra& b) {
    if (a.family_ != b.family_ || a.grading_ != b.grading_) return false;
    if (a.trunc_ != b.trunc_ || a.with_eps_ != b.with_eps_ || a.rho_ != b.rho_) return false;
    if (a.family_ == Family::Table) return a.table_ == b.table_;
    if (a.family_ == Family::Deformed)
      return *a.base_ == *b.base_ && a.cocycle_ == b.cocycle_;
    return true;
  }

 private:
  explicit CdgAlgebra(Family f) : family_(f) {}

  void check_label(AlgLabel l) const {
    if (l.idx < 0 || l.idx >= dim(l.deg))
      throw UsageError("algebra basis label out of range: degree " +
                       std::to_string(l.deg) + ", index " + std::to_string(l.idx));
  }

  static std::string power_name(const std::string& g, int n) {
    if (n == 0) return "1";
    if (n == 1) return g;
    return g + "^" + std::to_string(n);
  }

  std::vector<int> finite_support() const {
    switch (family_) {
      case Family::Base:
      case Family::DualNumbers: return {0};
      case Family::InitialTrunc: {
        std::vector<int> s;
        for (int j = 0; j < trunc_; ++j) s.push_back(2 * j);
        return s;
      }
      case Family::Z2Rho: return {0};
      case Family::Table: {
        std::vector<int> s;
        for (auto& [d, v] : table_.names)
          if (!v.empty()) s.push_back(d);
        return s;
      }
      case Family::Deformed: return base_->finite_support();
      default: throw UsageError("algebra has unbounded degree support");
    }
  }

  void validate_table() const {
    for (auto& [d, v] : table_.names)
      if (norm_deg(grading_, d) != d)
        throw UsageError("table degree keys must be normalized for the grading");
    if (table_.unit.deg != 0 || dim(0) <= table_.unit.idx)
      throw UsageError("table unit label out of range");
    for (auto& [l, w] : table_.factors) check_label(l);
  }

  void validate_deformation() const {
    auto fail = [](const std::string& what, const std::string& witness) {
      throw PreconditionViolation("deformation datum rejected: " + what +
                                  (witness.empty() ? "" : " at " + witness));
    };
    if (!base_->curvature().empty()) fail("base must have zero curvature", "");
    std::vector<AlgLabel> labels;
    for (int d : base_->finite_support())
      for (auto& l : base_->basis(d)) labels.push_back(l);
    auto t1_of = [&](const AlgElem<K>& e) {
      AlgElem<K> r;
      for (auto& [l, v] : e) {
        auto it = cocycle_.t1.find(l);
        if (it != cocycle_.t1.end()) r = elem_add(r, elem_scale(it->second, v));
      }
      return r;
    };
    auto t2_of = [&](const AlgElem<K>& a, const AlgElem<K>& b) {
      AlgElem<K> r;
      for (auto& [la, va] : a)
        for (auto& [lb, vb] : b) {
          auto it = cocycle_.t2.find({la, lb});
          if (it != cocycle_.t2.end()) r = elem_add(r, elem_scale(it->second, va * vb));
        }
      return r;
    };
    const auto& B = *base_;
    // base must be an honest dg algebra
    for (auto& x : labels) {
      if (!B.diff(B.diff(x)).empty()) fail("base differential must square to zero", B.name(x));
    }
    // homogeneity of the datum
    if (auto d0 = elem_deg(cocycle_.t0); d0 && *d0 != norm_deg(grading_, 2))
      fail("degree-2 component is inhomogeneous", "");
    for (auto& [x, e] : cocycle_.t1)
      if (auto d = elem_deg(e); d && *d != norm_deg(grading_, x.deg + 1))
        fail("degree-raising component is inhomogeneous", B.name(x));
    for (auto& [xy, e] : cocycle_.t2)
      if (auto d = elem_deg(e); d && *d != norm_deg(grading_, xy.first.deg + xy.second.deg))
        fail("bilinear component is inhomogeneous", B.name(xy.first) + ", " + B.name(xy.second));
    // unit normalization
    AlgLabel u = B.unit_label();
    if (!t1_of(B.one()).empty()) fail("degree-raising component must kill the unit", "1");
    for (auto& x : labels) {
      AlgElem<K> xe{{x, K(1)}};
      if (!t2_of(B.one(), xe).empty() || !t2_of(xe, B.one()).empty())
        fail("bilinear component must kill the unit", B.name(x));
    }
    (void)u;
    // closedness of the degree-2 component
    if (!B.diff(cocycle_.t0).empty()) fail("degree-2 component is not closed", "");
    // linear component: defect of the derivation rule against commutators
    for (auto& x : labels) {
      AlgElem<K> xe{{x, K(1)}};
      AlgElem<K> lhs = elem_add(B.diff(t1_of(xe)), t1_of(B.diff(xe)));
      AlgElem<K> rhs = elem_sub(B.mul(cocycle_.t0, xe), B.mul(xe, cocycle_.t0));
      if (lhs != rhs) fail("linear component has the wrong coboundary", B.name(x));
    }
    // bilinear component: controls the failure of the linear one on products
    for (auto& x : labels)
      for (auto& y : labels) {
        AlgElem<K> xe{{x, K(1)}}, ye{{y, K(1)}};
        K sx = koszul_sign<K>(x.deg);
        AlgElem<K> lhs = elem_add(t1_of(B.mul(xe, ye)), B.diff(t2_of(xe, ye)));
        AlgElem<K> rhs = t2_of(B.diff(xe), ye);
        rhs = elem_add(rhs, B.mul(t1_of(xe), ye));
        rhs = elem_add(rhs, elem_scale(t2_of(xe, B.diff(ye)), sx));
        rhs = elem_add(rhs, elem_scale(B.mul(xe, t1_of(ye)), sx));
        if (lhs != rhs)
          fail("bilinear component has the wrong coboundary", B.name(x) + ", " + B.name(y));
      }
    // bilinear component: associativity constraint
    for (auto& x : labels)
      for (auto& y : labels)
        for (auto& z : labels) {
          AlgElem<K> xe{{x, K(1)}}, ye{{y, K(1)}}, ze{{z, K(1)}};
          AlgElem<K> lhs = elem_add(t2_of(B.mul(xe, ye), ze), B.mul(t2_of(xe, ye), ze));
          AlgElem<K> rhs = elem_add(t2_of(xe, B.mul(ye, ze)), B.mul(xe, t2_of(ye, ze)));
          if (lhs != rhs)
            fail("bilinear component breaks associativity",
                 B.name(x) + ", " + B.name(y) + ", " + B.name(z));
        }
  }

  Family family_;
  Grading grading_ = Grading::Z;
  int trunc_ = 0;
  bool with_eps_ = false;
  Rho rho_ = Rho::Zero;
  AlgebraTable<K> table_;
  Ptr base_;
  Cocycle<K> cocycle_;
};

template <class K>
std::string elem_str(const CdgAlgebra<K>& A, const AlgElem<K>& e) {
  if (e.empty()) return "0";
  std::string s;
  for (auto& [l, v] : e) {
    if (!s.empty()) s += " + ";
    std::string cs = scalar_str(v);
    std::string ls = A.name(l);
    if (cs == "1")
      s += ls;
    else if (ls == "1")
      s += cs;
    else
      s += cs + "*" + ls;
  }
  return s;
}

struct AxiomViolation {
  std::string identity;
  std::string witness;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string identity, std::string witness, std::string detail = "") {
    violations.push_back({std::move(identity), std::move(witness), std::move(detail)});
  }
};

template <class K>
AxiomReport check_cdg_axioms(const CdgAlgebra<K>& A, Window w = Window()) {
  AxiomReport rep;
  std::vector<AlgLabel> labels;
  for (int d : w.degrees(A.grading()))
    for (auto& l : A.basis(d)) labels.push_back(l);

  const AlgElem<K> c = A.curvature();
  if (auto cd = elem_deg(c); cd && *cd != norm_deg(A.grading(), 2))
    rep.add("curvature lives in degree 2", elem_str(A, c));

  if (!A.diff(A.unit_label()).empty())
    rep.add("d(1) = 0", "1", elem_str(A, A.diff(A.unit_label())));
  if (!A.diff(c).empty())
    rep.add("d(c) = 0", elem_str(A, c), elem_str(A, A.diff(c)));

  for (auto& a : labels) {
    AlgElem<K> ae{{a, K(1)}};
    if (A.mul(A.one(), ae) != ae || A.mul(ae, A.one()) != ae)
      rep.add("1*a = a = a*1", A.name(a));
    AlgElem<K> lhs = A.diff(A.diff(ae));
    AlgElem<K> rhs = elem_sub(A.mul(c, ae), A.mul(ae, c));
    if (lhs != rhs)
      rep.add("d^2(a) = ca - ac", A.name(a),
              elem_str(A, lhs) + " vs " + elem_str(A, rhs));
  }

  for (auto& a : labels)
    for (auto& b : labels) {
      AlgElem<K> ae{{a, K(1)}}, be{{b, K(1)}};
      AlgElem<K> lhs = A.diff(A.mul(ae, be));
      AlgElem<K> rhs = elem_add(A.mul(A.diff(ae), be),
                                elem_scale(A.mul(ae, A.diff(be)), koszul_sign<K>(a.deg)));
      if (lhs != rhs)
        rep.add("d(ab) = d(a)b + (-1)^{|a|}a d(b)", A.name(a) + ", " + A.name(b),
                elem_str(A, lhs) + " vs " + elem_str(A, rhs));
    }

  for (auto& a : labels)
    for (auto& b : labels)
      for (auto& cc : labels) {
        AlgElem<K> ae{{a, K(1)}}, be{{b, K(1)}}, ce{{cc, K(1)}};
        if (A.mul(A.mul(ae, be), ce) != A.mul(ae, A.mul(be, ce)))
          rep.add("(ab)c = a(bc)", A.name(a) + ", " + A.name(b) + ", " + A.name(cc));
      }
  return rep;
}

// Strict homomorphism: degree 0, unital, multiplicative, commuting with the
// predifferentials, curvature to curvature.
template <class K>
class StrictMorphism {
 public:
  using APtr = typename CdgAlgebra<K>::Ptr;

  static StrictMorphism identity(APtr a) {
    StrictMorphism f;
    f.kind_ = Kind::Identity;
    f.source_ = a;
    f.target_ = std::move(a);
    return f;
  }

  // For sources k[c] or k[c]/c^n: determined by one element, the image of c.
  static StrictMorphism power(APtr source, APtr target, AlgElem<K> c_image) {
    if (source->family() != CdgAlgebra<K>::Family::InitialPoly &&
        source->family() != CdgAlgebra<K>::Family::InitialTrunc)
      throw UsageError("power morphism needs an initial-family source");
    StrictMorphism f;
    f.kind_ = Kind::Power;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.c_image_ = std::move(c_image);
    return f;
  }

  static StrictMorphism explicit_images(APtr source, APtr target,
                                        std::map<AlgLabel, AlgElem<K>> images) {
    StrictMorphism f;
    f.kind_ = Kind::Explicit;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.images_ = std::move(images);
    return f;
  }

  const APtr& source() const { return source_; }
  const APtr& target() const { return target_; }

  AlgElem<K> image(AlgLabel l) const {
    switch (kind_) {
      case Kind::Identity: return {{l, K(1)}};
      case Kind::Power: {
        AlgElem<K> r = target_->one();
        for (int j = 0; j < l.deg / 2; ++j) r = target_->mul(r, c_image_);
        return r;
      }
      case Kind::Explicit: {
        auto it = images_.find(l);
        if (it == images_.end())
          throw UsageError("morphism has no image for " + source_->name(l));
        return it->second;
      }
    }
    return {};
  }

  AlgElem<K> image(const AlgElem<K>& e) const {
    AlgElem<K> r;
    for (auto& [l, v] : e) r = elem_add(r, elem_scale(image(l), v));
    return r;
  }

 private:
  enum class Kind { Identity, Power, Explicit };
  Kind kind_ = Kind::Identity;
  APtr source_, target_;
  AlgElem<K> c_image_;
  std::map<AlgLabel, AlgElem<K>> images_;
};

// The unique strict morphism out of k[c] (or k[c]/c^n when the target's
// curvature is n-nilpotent), c mapping to the target's curvature.
template <class K>
StrictMorphism<K> initial_morphism(typename CdgAlgebra<K>::Ptr source,
                                   typename CdgAlgebra<K>::Ptr target) {
  using Fam = typename CdgAlgebra<K>::Family;
  if (source->family() != Fam::InitialPoly && source->family() != Fam::InitialTrunc)
    throw UsageError("initial morphism needs source k[c] or k[c]/c^n");
  if (source->grading() != target->grading())
    throw UsageError("initial morphism across different gradings");
  AlgElem<K> c = target->curvature();
  if (source->family() == Fam::InitialTrunc) {
    int n = source->trunc();
    AlgElem<K> p = target->one();
    for (int j = 0; j < n; ++j) p = target->mul(p, c);
    if (!p.empty())
      throw NotDefinedError("no morphism from " + source->str() + ": curvature power c^" +
                            std::to_string(n) + " = " + elem_str(*target, p) +
                            " is nonzero in the target");
  }
  return StrictMorphism<K>::power(std::move(source), std::move(target), std::move(c));
}

template <class K>
AxiomReport check_strict(const StrictMorphism<K>& f, Window w = Window()) {
  AxiomReport rep;
  const auto& A = *f.source();
  const auto& B = *f.target();
  if (A.grading() != B.grading()) {
    rep.add("gradings agree", A.str() + " vs " + B.str());
    return rep;
  }
  std::vector<AlgLabel> labels;
  for (int d : w.degrees(A.grading()))
    for (auto& l : A.basis(d)) labels.push_back(l);

  if (f.image(A.unit_label()) != B.one()) rep.add("f(1) = 1", "1");

  for (auto& a : labels) {
    AlgElem<K> fa = f.image(a);
    if (auto d = elem_deg(fa); d && *d != norm_deg(B.grading(), a.deg))
      rep.add("f preserves degree", A.name(a), elem_str(B, fa));
    if (f.image(A.diff(AlgElem<K>{{a, K(1)}})) != B.diff(fa))
      rep.add("f(da) = d(fa)", A.name(a));
  }

  for (auto& a : labels)
    for (auto& b : labels) {
      AlgElem<K> lhs = f.image(A.mul(AlgElem<K>{{a, K(1)}}, AlgElem<K>{{b, K(1)}}));
      AlgElem<K> rhs = B.mul(f.image(a), f.image(b));
      if (lhs != rhs)
        rep.add("f(ab) = f(a)f(b)", A.name(a) + ", " + A.name(b),
                elem_str(B, lhs) + " vs " + elem_str(B, rhs));
    }

  if (f.image(A.curvature()) != B.curvature())
    rep.add("f(c) = c'", elem_str(A, A.curvature()),
            elem_str(B, f.image(A.curvature())) + " vs " + elem_str(B, B.curvature()));
  return rep;
}

}  // namespace cdga
