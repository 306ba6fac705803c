#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdga/algebra.hpp"
#include "cdga/field.hpp"
#include "cdga/graded.hpp"
#include "cdga/matrix.hpp"

namespace cdga {

// Module with predifferential over a fixed algebra. Actions are stored for
// the algebra's designated generators only; everything else acts through
// token factorization (and d^2 plays the curvature for the initial
// families). A mask marks windowed truncations of infinite objects: any
// identity whose evaluation touches degrees outside the mask is treated as
// unknowable rather than checked.
template <class K>
struct CdgModule {
  using APtr = typename CdgAlgebra<K>::Ptr;

  APtr algebra;
  GradedSpace space;
  GradedMap<K> d;  // shift +1
  std::map<std::string, GradedMap<K>> actions;
  std::optional<std::pair<int, int>> mask;

  bool interior(std::initializer_list<int> degs) const {
    if (!mask) return true;
    for (int g : degs)
      if (g < mask->first || g > mask->second) return false;
    return true;
  }

  bool interior_range(int lo, int hi) const {
    if (!mask) return true;
    return mask->first <= lo && hi <= mask->second;
  }
};

template <class K>
CdgModule<K> make_module(typename CdgAlgebra<K>::Ptr algebra, GradedSpace space,
                         GradedMap<K> d, std::map<std::string, GradedMap<K>> actions = {},
                         std::optional<std::pair<int, int>> mask = std::nullopt) {
  if (!algebra) throw UsageError("module needs an algebra");
  if (space.grading != algebra->grading())
    throw UsageError("module grading disagrees with the algebra");
  if (d.source() != space || d.target() != space || d.shift() != 1)
    throw UsageError("module differential must be a shift +1 endomap of the space");
  auto gens = algebra->action_generators();
  for (auto& [tok, act] : actions) {
    bool known = false;
    int want = 0;
    for (auto& [t, dg] : gens)
      if (t == tok) {
        known = true;
        want = dg;
      }
    if (!known) throw UsageError("module action for unknown generator '" + tok + "'");
    if (act.source() != space || act.target() != space ||
        act.shift() != norm_deg(space.grading, want))
      throw UsageError("module action '" + tok + "' has the wrong shape or degree");
  }
  for (auto& [t, dg] : gens)
    if (!actions.count(t)) throw UsageError("module lacks an action for generator '" + t + "'");
  return CdgModule<K>{std::move(algebra), std::move(space), std::move(d), std::move(actions),
                      mask};
}

// Action of a basis label through its token factorization; "c" tokens act
// by d^2 (initial families only).
template <class K>
GradedMap<K> action_of_label(const CdgModule<K>& M, AlgLabel l) {
  GradedMap<K> acc = identity_map<K>(M.space);
  auto tokens = M.algebra->factor_tokens(l);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    const std::string& tok = *it;
    if (tok == "c") {
      acc = compose(M.d, compose(M.d, acc));
    } else {
      auto f = M.actions.find(tok);
      if (f == M.actions.end())
        throw UsageError("module lacks an action for generator '" + tok + "'");
      acc = compose(f->second, acc);
    }
  }
  return acc;
}

// shift_hint fixes the degree of the zero map when e has no terms.
template <class K>
GradedMap<K> action_of_elem(const CdgModule<K>& M, const AlgElem<K>& e,
                            std::optional<int> shift_hint = std::nullopt) {
  std::optional<int> q = elem_deg(e);
  if (!q) q = shift_hint;
  GradedMap<K> acc(M.space, M.space, q ? norm_deg(M.space.grading, *q) : 0);
  for (auto& [l, v] : e) acc = acc + action_of_label(M, l).scaled(v);
  return acc;
}

template <class K>
AxiomReport check_module_axioms(const CdgModule<K>& M, Window w = Window()) {
  AxiomReport rep;
  const CdgAlgebra<K>& A = *M.algebra;
  std::vector<int> degs = w.degrees(M.space.grading);

  GradedMap<K> dd = compose(M.d, M.d);
  GradedMap<K> cact = action_of_elem(M, A.curvature(), 2);
  for (int j : degs) {
    if (!M.interior_range(j, j + 2)) continue;
    if (dd.block(j) != cact.block(j))
      rep.add("d^2 = c-action", "degree " + std::to_string(j));
  }

  for (auto& [tok, act] : M.actions) {
    AlgElem<K> ge = A.generator_elem(tok);
    int gd = act.shift();
    GradedMap<K> lhs = compose(M.d, act);
    GradedMap<K> dg_act = action_of_elem(M, A.diff(ge), gd + 1);
    GradedMap<K> rhs = dg_act + compose(act, M.d).scaled(koszul_sign<K>(gd));
    for (int j : degs) {
      if (!M.interior_range(j, j + std::max(gd + 1, 1))) continue;
      if (lhs.block(j) != rhs.block(j))
        rep.add("d(g m) = d(g) m + (-1)^{|g|} g d(m)",
                "generator " + tok + ", degree " + std::to_string(j));
    }
  }

  std::vector<AlgLabel> labels;
  for (int dg : degs)
    for (auto& l : A.basis(dg)) labels.push_back(l);
  for (auto& a : labels)
    for (auto& b : labels) {
      AlgElem<K> ab = A.mul(a, b);
      int adeg = norm_deg(M.space.grading, a.deg);
      int bdeg = norm_deg(M.space.grading, b.deg);
      GradedMap<K> lhs = compose(action_of_label(M, a), action_of_label(M, b));
      GradedMap<K> rhs = action_of_elem(M, ab, adeg + bdeg);
      for (int j : degs) {
        if (!M.interior_range(j, j + std::max(adeg + bdeg, 0))) continue;
        if (lhs.block(j) != rhs.block(j))
          rep.add("(a b) m = a (b m)",
                  A.name(a) + ", " + A.name(b) + ", degree " + std::to_string(j));
      }
    }
  return rep;
}

// The standard interval: X in degrees shift..shift+n-1 joined by identities.
template <class K>
CdgModule<K> interval_precomplex(typename CdgAlgebra<K>::Ptr A, int x_dim, int n, int shift) {
  if (!A->c_via_dsquared())
    throw UsageError("interval precomplexes live over k[c] or its truncations");
  if (n < 1) throw UsageError("interval length must be >= 1");
  if (x_dim < 0) throw UsageError("negative fiber dimension");
  std::map<int, int> dims;
  for (int j = 0; j < n; ++j) dims[shift + j] = x_dim;
  GradedSpace sp = GradedSpace::z(dims);
  GradedMap<K> d(sp, sp, 1);
  for (int j = 0; j + 1 < n; ++j)
    d.set_block(shift + j, Matrix<K>::identity(x_dim));
  return make_module<K>(std::move(A), sp, d);
}

template <class K>
std::optional<std::pair<int, int>> combine_masks(const CdgModule<K>& a, const CdgModule<K>& b) {
  if (a.mask && b.mask) {
    int lo = std::max(a.mask->first, b.mask->first);
    int hi = std::min(a.mask->second, b.mask->second);
    if (lo > hi) throw UsageError("modules have disjoint masks");
    return std::make_pair(lo, hi);
  }
  return a.mask ? a.mask : b.mask;
}

template <class K>
struct ModuleSum {
  CdgModule<K> module;
  GradedMap<K> incl_left, incl_right, proj_left, proj_right;
};

template <class K>
ModuleSum<K> direct_sum(const CdgModule<K>& M, const CdgModule<K>& N) {
  if (!(*M.algebra == *N.algebra)) throw UsageError("direct sum across different algebras");
  std::vector<GradedSpace> parts{M.space, N.space};
  SumLayout lay = direct_sum_layout(parts);
  auto iM = sum_inclusion<K>(lay, parts, 0);
  auto iN = sum_inclusion<K>(lay, parts, 1);
  auto pM = sum_projection<K>(lay, parts, 0);
  auto pN = sum_projection<K>(lay, parts, 1);
  GradedMap<K> d = compose(iM, compose(M.d, pM)) + compose(iN, compose(N.d, pN));
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, act] : M.actions)
    actions.emplace(tok, compose(iM, compose(act, pM)) + compose(iN, compose(N.actions.at(tok), pN)));
  CdgModule<K> sum = make_module<K>(M.algebra, lay.sum, d, actions, combine_masks(M, N));
  return {std::move(sum), std::move(iM), std::move(iN), std::move(pM), std::move(pN)};
}

// Shift by n: degrees drop by n, the differential picks up (-1)^n, even
// generators act unchanged, odd ones pick up (-1)^n.
template <class K>
CdgModule<K> shift_module(const CdgModule<K>& M, int n) {
  GradedMap<K> d = shift_map(M.d, n).scaled(koszul_sign<K>(n));
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, act] : M.actions) {
    K s = deg_is_odd(act.shift()) ? koszul_sign<K>(n) : K(1);
    actions.emplace(tok, shift_map(act, n).scaled(s));
  }
  std::optional<std::pair<int, int>> mask;
  if (M.mask) mask = std::make_pair(M.mask->first - n, M.mask->second - n);
  return CdgModule<K>{M.algebra, M.space.shifted(n), std::move(d), std::move(actions), mask};
}

// Does f: M -> N (of any shift) commute with the differentials and actions
// in the Koszul sense? Shift-0 instances are the strict module maps.
template <class K>
AxiomReport check_pdg_map(const GradedMap<K>& f, const CdgModule<K>& M, const CdgModule<K>& N) {
  AxiomReport rep;
  if (!(*M.algebra == *N.algebra)) {
    rep.add("modules share an algebra", "algebra");
    return rep;
  }
  if (f.source() != M.space || f.target() != N.space) {
    rep.add("map fits the spaces", "shape");
    return rep;
  }
  int s = f.shift();
  K sgn = koszul_sign<K>(s);
  auto degrees = [&](const GradedSpace& sp) { return sp.support(); };
  GradedMap<K> lhs = compose(N.d, f);
  GradedMap<K> rhs = compose(f, M.d).scaled(sgn);
  for (int j : degrees(M.space)) {
    if (!M.interior({j, j + 1}) || !N.interior({j + s, j + s + 1})) continue;
    if (lhs.block(j) != rhs.block(j))
      rep.add("d_N f = (-1)^{|f|} f d_M", "degree " + std::to_string(j));
  }
  for (auto& [tok, actM] : M.actions) {
    const GradedMap<K>& actN = N.actions.at(tok);
    int gd = actM.shift();
    K gs = deg_is_odd(gd) ? sgn : K(1);
    GradedMap<K> l2 = compose(f, actM);
    GradedMap<K> r2 = compose(actN, f).scaled(gs);
    for (int j : degrees(M.space)) {
      if (!M.interior({j, j + gd}) || !N.interior({j + s, j + s + gd})) continue;
      if (l2.block(j) != r2.block(j))
        rep.add("f(g m) = (-1)^{|f||g|} g f(m)",
                "generator " + tok + ", degree " + std::to_string(j));
    }
  }
  return rep;
}

template <class K>
struct PdgCone {
  CdgModule<K> module;  // on N (+) M; d^2 need not be the curvature action
  GradedMap<K> dsq_top, dsq_bottom;
  GradedMap<K> incl_n, incl_m, proj_n, proj_m;
};

// Two-periodic gluing: d = [[d_N, phi],[psi, d_M]] on N (+) M for degree +1
// maps phi: M -> N, psi: N -> M commuting with everything. d^2 is then
// block diagonal; its diagonal blocks are returned for inspection.
template <class K>
PdgCone<K> pdg_cone(const CdgModule<K>& N, const CdgModule<K>& M, const GradedMap<K>& phi,
                    const GradedMap<K>& psi) {
  if (!(*M.algebra == *N.algebra)) throw UsageError("cone across different algebras");
  if (phi.shift() != 1 || psi.shift() != 1)
    throw UsageError("cone gluing maps must have shift +1");
  auto preflight = [&](const GradedMap<K>& f, const CdgModule<K>& S, const CdgModule<K>& T,
                       const std::string& which) {
    AxiomReport r = check_pdg_map(f, S, T);
    if (!r.ok())
      throw PreconditionViolation("cone gluing map " + which + " is not a module map: " +
                                  r.violations[0].identity + " fails at " +
                                  r.violations[0].witness);
  };
  preflight(phi, M, N, "phi");
  preflight(psi, N, M, "psi");

  std::vector<GradedSpace> parts{N.space, M.space};
  SumLayout lay = direct_sum_layout(parts);
  auto iN = sum_inclusion<K>(lay, parts, 0);
  auto iM = sum_inclusion<K>(lay, parts, 1);
  auto pN = sum_projection<K>(lay, parts, 0);
  auto pM = sum_projection<K>(lay, parts, 1);
  GradedMap<K> d = compose(iN, compose(N.d, pN)) + compose(iM, compose(M.d, pM)) +
                   compose(iN, compose(phi, pM)) + compose(iM, compose(psi, pN));
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, act] : N.actions)
    actions.emplace(tok, compose(iN, compose(act, pN)) + compose(iM, compose(M.actions.at(tok), pM)));
  CdgModule<K> cone{N.algebra, lay.sum, d, actions, combine_masks(N, M)};
  GradedMap<K> dd = compose(d, d);
  GradedMap<K> top = compose(pN, compose(dd, iN));
  GradedMap<K> bottom = compose(pM, compose(dd, iM));
  return {std::move(cone), std::move(top), std::move(bottom),
          std::move(iN), std::move(iM), std::move(pN), std::move(pM)};
}

template <class K>
struct Splitting {
  AlgElem<K> phi;  // degree 1 - offset
  AlgElem<K> psi;  // degree 1 + offset
  int offset = 1;
};

namespace detail {

template <class K>
bool family_is_infinite(const CdgAlgebra<K>& A) {
  using Fam = typename CdgAlgebra<K>::Family;
  return A.family() == Fam::InitialPoly || A.family() == Fam::PolyU;
}

template <class K>
std::vector<int> regular_degrees(const CdgAlgebra<K>& A, std::optional<Window> w) {
  if (A.grading() == Grading::Z2) return {0, 1};
  if (!family_is_infinite(A)) return A.support_degrees();
  if (!w) throw UsageError("windowed carrier required for an infinite algebra");
  return w->degrees(Grading::Z);
}

}  // namespace detail

// A itself as a left module (requires d_A = 0), on the full support for
// finite families and on a mask window otherwise.
template <class K>
CdgModule<K> regular_module(typename CdgAlgebra<K>::Ptr A, std::optional<Window> w) {
  std::vector<int> degs = detail::regular_degrees(*A, w);
  for (int j : degs)
    for (auto& l : A->basis(j))
      if (!A->diff(l).empty())
        throw PreconditionViolation("regular module needs a zero differential, found d(" +
                                    A->name(l) + ") != 0");
  std::map<int, int> dims;
  for (int j : degs) dims[j] = A->dim(j);
  GradedSpace sp(A->grading(), dims);
  GradedMap<K> d(sp, sp, 1);
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, gd] : A->action_generators()) {
    AlgElem<K> g = A->generator_elem(tok);
    GradedMap<K> act(sp, sp, norm_deg(A->grading(), gd));
    for (int j : degs) {
      int tj = j + gd;
      Matrix<K> blk(sp.dim(tj), sp.dim(j));
      if (blk.rows() > 0) {  // products landing outside the carrier are dropped
        auto src = A->basis(j);
        for (int cidx = 0; cidx < (int)src.size(); ++cidx) {
          AlgElem<K> prod = A->mul(g, AlgElem<K>{{src[cidx], K(1)}});
          for (auto& [l, v] : prod) blk.set(l.idx, cidx, v);
        }
      }
      act.set_block(j, blk);
    }
    actions.emplace(tok, std::move(act));
  }
  std::optional<std::pair<int, int>> mask;
  if (A->grading() == Grading::Z && detail::family_is_infinite(*A))
    mask = std::make_pair(w->lo, w->hi);
  return CdgModule<K>{std::move(A), sp, d, std::move(actions), mask};
}

// Signed right multiplication x -> (-1)^{|x|} x*w as a block of an odd
// operator; |x| is the algebra degree of the source basis element, which
// sits at src_offset above the carrier degree.
template <class K>
GradedMap<K> signed_right_mult(const CdgAlgebra<K>& A, int src_offset, const AlgElem<K>& w,
                               const GradedSpace& source, const GradedSpace& target) {
  GradedMap<K> f(source, target, 1);
  if (w.empty()) return f;
  for (int j : source.support()) {
    int adeg = j + src_offset;  // algebra degree of source basis elements
    Matrix<K> blk(target.dim(j + 1), source.dim(j));
    if (blk.rows() > 0) {  // products landing outside the carrier are dropped
      auto src = A.basis(adeg);
      K sgn = koszul_sign<K>(adeg);
      for (int cidx = 0; cidx < (int)src.size(); ++cidx) {
        AlgElem<K> prod = A.mul(AlgElem<K>{{src[cidx], K(1)}}, w);
        for (auto& [l, v] : prod) blk.set(l.idx, cidx, sgn * v);
      }
    }
    f.set_block(j, blk);
  }
  return f;
}

// The graded-free rank-two module attached to a splitting: A (+) A[offset],
// glued by signed right multiplication with psi and phi.
template <class K>
CdgModule<K> splitting_cone(typename CdgAlgebra<K>::Ptr A, const Splitting<K>& s,
                            std::optional<Window> w = std::nullopt) {
  const Grading g = A->grading();
  if (auto pd = elem_deg(s.phi); pd && norm_deg(g, *pd) != norm_deg(g, 1 - s.offset))
    throw PreconditionViolation("splitting element phi has degree " + std::to_string(*pd) +
                                ", expected " + std::to_string(1 - s.offset));
  if (auto qd = elem_deg(s.psi); qd && norm_deg(g, *qd) != norm_deg(g, 1 + s.offset))
    throw PreconditionViolation("splitting element psi has degree " + std::to_string(*qd) +
                                ", expected " + std::to_string(1 + s.offset));
  if (!A->diff(s.phi).empty() || !A->diff(s.psi).empty())
    throw PreconditionViolation("splitting elements must be closed");
  AlgElem<K> c = A->curvature();
  if (A->mul(s.psi, s.phi) != c || A->mul(s.phi, s.psi) != c)
    throw PreconditionViolation(
        "splitting identity fails: psi*phi = " + elem_str(*A, A->mul(s.psi, s.phi)) +
        ", phi*psi = " + elem_str(*A, A->mul(s.phi, s.psi)) + ", curvature = " +
        elem_str(*A, c));

  std::optional<Window> wn = w, wm = w;
  if (g == Grading::Z && detail::family_is_infinite(*A)) {
    if (!w) throw UsageError("windowed carrier required for an infinite algebra");
    wm = Window(w->lo + s.offset, w->hi + s.offset);
  }
  CdgModule<K> N = regular_module<K>(A, wn);
  CdgModule<K> M = shift_module(regular_module<K>(A, wm), s.offset);
  GradedMap<K> phi_block = signed_right_mult(*A, s.offset, s.phi, M.space, N.space);
  GradedMap<K> psi_block = signed_right_mult(*A, 0, s.psi, N.space, M.space);
  return pdg_cone(N, M, phi_block, psi_block).module;
}

template <class K>
struct ConeOfMap {
  CdgModule<K> module;  // N (+) M[1]
  GradedMap<K> from_target;       // N -> cone
  GradedMap<K> to_shifted_source; // cone -> M[1]
};

template <class K>
ConeOfMap<K> cone_of_map(const GradedMap<K>& f, const CdgModule<K>& M, const CdgModule<K>& N) {
  if (f.shift() != 0) throw UsageError("cone expects a degree-0 map");
  AxiomReport strict = check_pdg_map(f, M, N);
  if (!strict.ok())
    throw PreconditionViolation("cone of a non-strict map: " + strict.violations[0].identity +
                                " fails at " + strict.violations[0].witness);
  CdgModule<K> M1 = shift_module(M, 1);
  GradedMap<K> fb(M1.space, N.space, 1);
  for (int j : M1.space.support()) fb.set_block(j, f.block(j + 1));

  std::vector<GradedSpace> parts{N.space, M1.space};
  SumLayout lay = direct_sum_layout(parts);
  auto iN = sum_inclusion<K>(lay, parts, 0);
  auto iM = sum_inclusion<K>(lay, parts, 1);
  auto pN = sum_projection<K>(lay, parts, 0);
  auto pM = sum_projection<K>(lay, parts, 1);
  GradedMap<K> d = compose(iN, compose(N.d, pN)) + compose(iM, compose(M1.d, pM)) +
                   compose(iN, compose(fb, pM));
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, act] : N.actions)
    actions.emplace(tok, compose(iN, compose(act, pN)) + compose(iM, compose(M1.actions.at(tok), pM)));
  CdgModule<K> cone{N.algebra, lay.sum, d, actions, combine_masks(N, M1)};
  return {std::move(cone), std::move(iN), std::move(pM)};
}

template <class K>
struct ShortExactSeq {
  CdgModule<K> left, mid, right;
  GradedMap<K> i;  // left -> mid, shift 0
  GradedMap<K> p;  // mid -> right, shift 0
};

struct SesReport {
  bool exact = false;
  bool graded_k_split = true;  // automatic over a field
  AxiomReport details;
};

template <class K>
SesReport verify_ses(const ShortExactSeq<K>& s) {
  SesReport rep;
  rep.details = check_pdg_map(s.i, s.left, s.mid);
  for (auto& v : check_pdg_map(s.p, s.mid, s.right).violations) rep.details.violations.push_back(v);
  std::set<int> degs;
  for (int j : s.left.space.support()) degs.insert(j);
  for (int j : s.mid.space.support()) degs.insert(j);
  for (int j : s.right.space.support()) degs.insert(j);
  GradedMap<K> pi = compose(s.p, s.i);
  for (int j : degs) {
    if (!s.mid.interior({j})) continue;
    if (!pi.block(j).is_zero()) rep.details.add("p i = 0", "degree " + std::to_string(j));
    int ri = s.i.block(j).rank();
    int rp = s.p.block(j).rank();
    if (ri != s.left.space.dim(j))
      rep.details.add("i is injective", "degree " + std::to_string(j));
    if (rp != s.right.space.dim(j))
      rep.details.add("p is surjective", "degree " + std::to_string(j));
    if (ri + rp != s.mid.space.dim(j))
      rep.details.add("im i = ker p", "degree " + std::to_string(j));
  }
  rep.exact = rep.details.ok();
  return rep;
}

// Totalization M'[1] (+) M (+) M''[-1]: outer differentials negated (their
// shifts do that), i and p placed unsigned in the adjacent blocks.
template <class K>
CdgModule<K> totalize_ses(const ShortExactSeq<K>& s) {
  SesReport chk = verify_ses(s);
  if (!chk.exact)
    throw PreconditionViolation("totalization of an inexact sequence: " +
                                chk.details.violations[0].identity + " fails at " +
                                chk.details.violations[0].witness);
  CdgModule<K> L1 = shift_module(s.left, 1);
  CdgModule<K> R1 = shift_module(s.right, -1);
  std::vector<GradedSpace> parts{L1.space, s.mid.space, R1.space};
  SumLayout lay = direct_sum_layout(parts);
  auto iL = sum_inclusion<K>(lay, parts, 0);
  auto iM = sum_inclusion<K>(lay, parts, 1);
  auto iR = sum_inclusion<K>(lay, parts, 2);
  auto pL = sum_projection<K>(lay, parts, 0);
  auto pM = sum_projection<K>(lay, parts, 1);
  auto pR = sum_projection<K>(lay, parts, 2);
  GradedMap<K> ib(L1.space, s.mid.space, 1);
  for (int j : L1.space.support()) ib.set_block(j, s.i.block(j + 1));
  GradedMap<K> pb(s.mid.space, R1.space, 1);
  for (int j : s.mid.space.support()) pb.set_block(j, s.p.block(j));
  GradedMap<K> d = compose(iL, compose(L1.d, pL)) + compose(iM, compose(s.mid.d, pM)) +
                   compose(iR, compose(R1.d, pR)) + compose(iM, compose(ib, pL)) +
                   compose(iR, compose(pb, pM));
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, act] : L1.actions)
    actions.emplace(tok, compose(iL, compose(act, pL)) +
                             compose(iM, compose(s.mid.actions.at(tok), pM)) +
                             compose(iR, compose(R1.actions.at(tok), pR)));
  std::optional<std::pair<int, int>> mask = combine_masks(L1, s.mid);
  CdgModule<K> mid_masked = s.mid;  // only for mask combination below
  mid_masked.mask = mask;
  mask = combine_masks(mid_masked, R1);
  return CdgModule<K>{s.mid.algebra, lay.sum, d, actions, mask};
}

// Pull a module over f's target back to a module over f's source: same
// space and differential, generator actions transported through f.
template <class K>
CdgModule<K> restrict_scalars(const StrictMorphism<K>& f, const CdgModule<K>& M) {
  if (!(*f.target() == *M.algebra))
    throw UsageError("module is not over the morphism's target");
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, gd] : f.source()->action_generators())
    actions.emplace(tok, action_of_elem(M, f.image(f.source()->generator_elem(tok)), gd));
  return CdgModule<K>{f.source(), M.space, M.d, std::move(actions), M.mask};
}

template <class K>
struct EpsReduction {
  CdgModule<K> module;     // over the eps = 0 quotient
  GradedMap<K> projection; // M -> reduced, degreewise surjection
};

// Quotient by the image of the eps-action, with induced differential and
// actions. The complement of im(eps) is chosen deterministically from the
// reduced echelon pivots of [E | I].
template <class K>
EpsReduction<K> reduce_mod_epsilon(const CdgModule<K>& M) {
  auto eit = M.actions.find("eps");
  if (eit == M.actions.end()) throw UsageError("module has no eps action to reduce by");
  const GradedMap<K>& E = eit->second;
  if (!compose(E, E).is_zero())
    throw PreconditionViolation("eps action does not square to zero");
  typename CdgAlgebra<K>::Ptr Q = M.algebra->eps_quotient();

  std::map<int, Matrix<K>> proj, sect;
  std::map<int, int> qdims;
  for (int j : M.space.support()) {
    int n = M.space.dim(j);
    Matrix<K> Ej = E.block(j);
    auto ech = Matrix<K>::hstack(Ej, Matrix<K>::identity(n)).rref();
    std::vector<int> comp;  // identity columns completing im(E) to M^j
    for (int c : ech.pivots)
      if (c >= Ej.cols()) comp.push_back(c - Ej.cols());
    Matrix<K> basis(n, n);
    int r = (int)ech.pivots.size() - (int)comp.size();  // rank of E_j
    {
      int col = 0;
      for (int c : ech.pivots) {
        if (c < Ej.cols()) basis.insert_block(0, col++, Ej.block(0, c, n, 1));
      }
      for (int k : comp) basis.set(k, col++, K(1));
    }
    auto inv = basis.inverse();
    if (!inv) throw PreconditionViolation("complement construction failed");  // unreachable
    sect[j] = Matrix<K>(n, (int)comp.size());
    for (int t = 0; t < (int)comp.size(); ++t) sect[j].set(comp[t], t, K(1));
    proj[j] = inv->block(r, 0, (int)comp.size(), n);
    if (!comp.empty()) qdims[j] = (int)comp.size();
  }
  GradedSpace qspace(M.space.grading, qdims);
  auto induce = [&](const GradedMap<K>& f) {
    GradedMap<K> g(qspace, qspace, f.shift());
    for (int j : qspace.support()) {
      int tj = norm_deg(M.space.grading, j + f.shift());
      if (!proj.count(tj)) continue;
      g.set_block(j, proj.at(tj) * f.block(j) * sect.at(j));
      // well-defined only if f maps im(eps) into im(eps)
      Matrix<K> on_image = proj.at(tj) * f.block(j) * E.block(j);
      if (!on_image.is_zero())
        throw PreconditionViolation("map does not descend along the eps quotient at degree " +
                                    std::to_string(j));
    }
    return g;
  };
  GradedMap<K> qd = induce(M.d);
  std::map<std::string, GradedMap<K>> actions;
  for (auto& [tok, gd] : Q->action_generators()) actions.emplace(tok, induce(M.actions.at(tok)));
  GradedMap<K> projection(M.space, qspace, 0);
  for (int j : M.space.support())
    if (qspace.dim(j) > 0) projection.set_block(j, proj.at(j));
  CdgModule<K> out{std::move(Q), qspace, std::move(qd), std::move(actions), M.mask};
  return {std::move(out), std::move(projection)};
}

// Regard a module over the eps = 0 quotient as a module where eps acts by
// zero; one-sided inverse of reduce_mod_epsilon.
template <class K>
CdgModule<K> extend_zero_eps(typename CdgAlgebra<K>::Ptr A, const CdgModule<K>& M) {
  if (!(*A->eps_quotient() == *M.algebra))
    throw UsageError("module is not over the eps quotient of the given algebra");
  std::map<std::string, GradedMap<K>> actions = M.actions;
  actions.emplace("eps", GradedMap<K>(M.space, M.space, 0));
  return CdgModule<K>{std::move(A), M.space, M.d, std::move(actions), M.mask};
}

}  // namespace cdga
