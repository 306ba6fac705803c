#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdga/algebra.hpp"
#include "cdga/graded.hpp"
#include "cdga/matrix.hpp"
#include "cdga/module.hpp"

namespace cdga {

// Shape and rank data of the linear system behind a homotopy search; kept
// around so callers can report *why* no witness exists.
struct SystemDiag {
  int rows = 0;
  int cols = 0;
  int rank_a = 0;
  int rank_aug = 0;
  bool consistent() const { return rank_a == rank_aug; }
};

// Linear system whose unknowns are matrices.  Equations
//   sum_t  L_t * X_{key_t} * R_t = B
// flatten to scalar rows over the stacked entries of the blocks (row-major
// within each block).  Terms naming an unregistered key read as zero, which
// spares callers the emptiness bookkeeping at degree boundaries.
template <class K>
class BlockSystem {
 public:
  void add_block(int key, int rows, int cols) {
    if (slots_.count(key)) throw UsageError("block system key registered twice");
    if (rows < 0 || cols < 0) throw UsageError("negative block shape");
    slots_[key] = Slot{ncols_, rows, cols};
    ncols_ += rows * cols;
  }

  bool has_block(int key) const { return slots_.count(key) > 0; }

  struct Term {
    int key;
    Matrix<K> left;
    Matrix<K> right;
  };

  void add_equation(const std::vector<Term>& terms, const Matrix<K>& rhs) {
    int m = rhs.rows(), n = rhs.cols();
    int base = (int)rows_.size();
    rows_.resize(rows_.size() + (size_t)m * (size_t)n);
    rhs_.resize(rows_.size(), K(0));
    for (auto& [rc, v] : rhs.entries()) rhs_[base + rc.first * n + rc.second] = v;
    for (auto& t : terms) {
      if (t.left.rows() != m || t.right.cols() != n)
        throw UsageError("equation term shape mismatch");
      auto it = slots_.find(t.key);
      if (it == slots_.end()) continue;
      const Slot& s = it->second;
      if (t.left.cols() != s.rows || t.right.rows() != s.cols)
        throw UsageError("equation term does not fit its block");
      // coefficient of X[a][b] in output entry (i, j) is L[i][a] * R[b][j]
      for (auto& [lrc, lv] : t.left.entries())
        for (auto& [rrc, rv] : t.right.entries()) {
          auto& row = rows_[base + lrc.first * n + rrc.second];
          int col = s.offset + lrc.second * s.cols + rrc.first;
          K& c = row[col];
          c += lv * rv;
          if (c == K(0)) row.erase(col);
        }
    }
  }

  Matrix<K> matrix() const {
    Matrix<K> a((int)rows_.size(), ncols_);
    for (int i = 0; i < (int)rows_.size(); ++i)
      for (auto& [j, v] : rows_[i]) a.set(i, j, v);
    return a;
  }

  struct Solution {
    std::optional<std::vector<K>> x;
    SystemDiag diag;
  };

  Solution solve() const {
    Matrix<K> a = matrix();
    auto info = a.solve_info(rhs_);
    return Solution{std::move(info.x),
                    SystemDiag{a.rows(), a.cols(), info.rank_a, info.rank_aug}};
  }

  std::vector<std::vector<K>> kernel() const { return matrix().kernel_basis(); }

  // Block of a solution vector; unregistered keys give the zero block.
  Matrix<K> unpack(const std::vector<K>& x, int key, int rows, int cols) const {
    if ((int)x.size() != ncols_) throw UsageError("solution length mismatch");
    Matrix<K> b(rows, cols);
    auto it = slots_.find(key);
    if (it == slots_.end()) return b;
    const Slot& s = it->second;
    if (s.rows != rows || s.cols != cols) throw UsageError("unpack shape mismatch");
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b.set(i, j, x[s.offset + i * cols + j]);
    return b;
  }

 private:
  struct Slot {
    int offset = 0;
    int rows = 0;
    int cols = 0;
  };
  std::map<int, Slot> slots_;
  int ncols_ = 0;
  std::vector<std::map<int, K>> rows_;
  std::vector<K> rhs_;
};

// Outcome of a homotopy search: the witness when the system is solvable,
// plus the system's shape and ranks either way.
template <class K>
struct HomotopySearch {
  std::optional<GradedMap<K>> h;
  SystemDiag diag;
};

namespace detail {

// Common core: find h of shift -1 with  d_N h + h d_M = rhs  commuting with
// the designated actions (h is odd, so commuting picks up the generator's
// sign).  Over k[c] and its truncations the curvature acts through d^2, so
// commuting with d^2 stands in for linearity over the whole algebra.  Masked
// modules pose only the equations whose footprint lies inside both windows.
template <class K>
HomotopySearch<K> homotopy_solve(const CdgModule<K>& M, const CdgModule<K>& N,
                                 const GradedMap<K>& rhs, bool respect_actions) {
  Grading gr = M.space.grading;
  auto key = [&](int j) { return norm_deg(gr, j); };
  BlockSystem<K> sys;
  for (int j : M.space.support())
    if (N.space.dim(j - 1) > 0) sys.add_block(key(j), N.space.dim(j - 1), M.space.dim(j));

  bool via_dsq = respect_actions && M.algebra->c_via_dsquared();
  GradedMap<K> ddM = compose(M.d, M.d);
  GradedMap<K> ddN = compose(N.d, N.d);

  for (int j : M.space.support()) {
    int mj = M.space.dim(j);
    if (M.interior({j, j + 1}) && N.interior({j - 1, j}))
      sys.add_equation({{key(j), N.d.block(j - 1), Matrix<K>::identity(mj)},
                        {key(j + 1), Matrix<K>::identity(N.space.dim(j)), M.d.block(j)}},
                       rhs.block(j));
    if (!respect_actions) continue;
    for (auto& [tok, actM] : M.actions) {
      const GradedMap<K>& actN = N.actions.at(tok);
      int gd = actM.shift();
      if (!M.interior({j, j + gd}) || !N.interior({j - 1, j + gd - 1})) continue;
      int rows = N.space.dim(j + gd - 1);
      sys.add_equation(
          {{key(j + gd), Matrix<K>::identity(rows), actM.block(j)},
           {key(j), actN.block(j - 1).scaled(-koszul_sign<K>(gd)), Matrix<K>::identity(mj)}},
          Matrix<K>(rows, mj));
    }
    if (via_dsq && M.interior({j, j + 2}) && N.interior({j - 1, j + 1})) {
      int rows = N.space.dim(j + 1);
      sys.add_equation({{key(j + 2), Matrix<K>::identity(rows), ddM.block(j)},
                        {key(j), ddN.block(j - 1).scaled(K(-1)), Matrix<K>::identity(mj)}},
                       Matrix<K>(rows, mj));
    }
  }

  auto sol = sys.solve();
  HomotopySearch<K> out;
  out.diag = sol.diag;
  if (sol.x) {
    GradedMap<K> h(M.space, N.space, -1);
    for (int j : M.space.support())
      if (N.space.dim(j - 1) > 0)
        h.set_block(j, sys.unpack(*sol.x, key(j), N.space.dim(j - 1), M.space.dim(j)));
    out.h = std::move(h);
  }
  return out;
}

}  // namespace detail

// Null-homotopy oracle: h of shift -1 with dh + hd = f.  No witness means
// the assembled linear system is inconsistent.
template <class K>
HomotopySearch<K> null_homotopy(const GradedMap<K>& f, const CdgModule<K>& M,
                                const CdgModule<K>& N, bool respect_actions = true) {
  if (f.shift() != 0)
    throw PreconditionViolation("null homotopy of a non-strict map: nonzero shift");
  AxiomReport strict = check_pdg_map(f, M, N);
  if (!strict.ok())
    throw PreconditionViolation("null homotopy of a non-strict map: " +
                                strict.violations[0].identity + " fails at " +
                                strict.violations[0].witness);
  return detail::homotopy_solve(M, N, f, respect_actions);
}

// Contractibility oracle: dh + hd = 1.
template <class K>
HomotopySearch<K> is_contractible(const CdgModule<K>& M, bool respect_actions = true) {
  return detail::homotopy_solve(M, M, identity_map<K>(M.space), respect_actions);
}

// Over k[c] and its truncations, compare the contractibility verdict with
// and without the curvature-commutation equations.  The two must agree; the
// comparison itself is the point of the operation.
template <class K>
bool homotopy_forget_agreement(const CdgModule<K>& M) {
  if (!M.algebra->c_via_dsquared())
    throw UsageError("forget comparison applies over k[c] and its truncations");
  return is_contractible(M).h.has_value() == is_contractible(M, false).h.has_value();
}

// Basis of the shift-t piece of the graded hom complex: maps commuting with
// the designated actions (and with d^2 where the curvature acts that way),
// with no compatibility demanded against d itself.
template <class K>
std::vector<GradedMap<K>> hom_piece_basis(const CdgModule<K>& M, const CdgModule<K>& N,
                                          int t) {
  if (!(*M.algebra == *N.algebra)) throw UsageError("hom pieces need modules over one algebra");
  Grading gr = M.space.grading;
  auto key = [&](int j) { return norm_deg(gr, j); };
  BlockSystem<K> sys;
  for (int j : M.space.support())
    if (N.space.dim(j + t) > 0) sys.add_block(key(j), N.space.dim(j + t), M.space.dim(j));

  bool via_dsq = M.algebra->c_via_dsquared();
  GradedMap<K> ddM = compose(M.d, M.d);
  GradedMap<K> ddN = compose(N.d, N.d);
  for (int j : M.space.support()) {
    int mj = M.space.dim(j);
    for (auto& [tok, actM] : M.actions) {
      const GradedMap<K>& actN = N.actions.at(tok);
      int gd = actM.shift();
      if (!M.interior({j, j + gd}) || !N.interior({j + t, j + t + gd})) continue;
      int rows = N.space.dim(j + gd + t);
      sys.add_equation(
          {{key(j + gd), Matrix<K>::identity(rows), actM.block(j)},
           {key(j), actN.block(j + t).scaled(-koszul_sign<K>(t * gd)),
            Matrix<K>::identity(mj)}},
          Matrix<K>(rows, mj));
    }
    if (via_dsq && M.interior({j, j + 2}) && N.interior({j + t, j + t + 2})) {
      int rows = N.space.dim(j + t + 2);
      sys.add_equation({{key(j + 2), Matrix<K>::identity(rows), ddM.block(j)},
                        {key(j), ddN.block(j + t).scaled(K(-1)), Matrix<K>::identity(mj)}},
                       Matrix<K>(rows, mj));
    }
  }

  std::vector<GradedMap<K>> basis;
  for (auto& v : sys.kernel()) {
    GradedMap<K> f(M.space, N.space, t);
    for (int j : M.space.support())
      if (N.space.dim(j + t) > 0)
        f.set_block(j, sys.unpack(v, key(j), N.space.dim(j + t), M.space.dim(j)));
    basis.push_back(std::move(f));
  }
  return basis;
}

// D(f) = d_N f - (-1)^t f d_M for f of shift t.
template <class K>
GradedMap<K> hom_differential(const CdgModule<K>& M, const CdgModule<K>& N,
                              const GradedMap<K>& f) {
  return compose(N.d, f) + compose(f, M.d).scaled(-koszul_sign<K>(f.shift()));
}

namespace detail {

// Coordinates of g in the span of basis (maps of one shape); empty when g
// falls outside the span.
template <class K>
std::optional<std::vector<K>> coords_in_span(const std::vector<GradedMap<K>>& basis,
                                             const GradedMap<K>& g) {
  std::vector<int> degs = g.source().support();
  auto flatten = [&](const GradedMap<K>& f) {
    std::vector<K> v;
    for (int j : degs) {
      Matrix<K> b = f.block(j);
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) v.push_back(b.at(r, c));
    }
    return v;
  };
  std::vector<K> w = flatten(g);
  std::vector<std::vector<K>> cols;
  cols.reserve(basis.size());
  for (auto& f : basis) cols.push_back(flatten(f));
  return Matrix<K>::from_columns(cols, (int)w.size()).solve(w);
}

// Matrix of D between chosen piece bases.
template <class K>
Matrix<K> hom_diff_matrix(const CdgModule<K>& M, const CdgModule<K>& N,
                          const std::vector<GradedMap<K>>& from,
                          const std::vector<GradedMap<K>>& to) {
  std::vector<std::vector<K>> cols;
  cols.reserve(from.size());
  for (auto& f : from) {
    auto x = coords_in_span(to, hom_differential(M, N, f));
    if (!x)
      throw PreconditionViolation("hom differential leaves the computed piece; widen the window");
    cols.push_back(std::move(*x));
  }
  return Matrix<K>::from_columns(cols, (int)to.size());
}

}  // namespace detail

// Cohomology of the hom complex at shift i: dimension plus representative
// maps lifting a basis.
template <class K>
struct HomCohomology {
  int dim = 0;
  std::vector<GradedMap<K>> representatives;
};

template <class K>
HomCohomology<K> hom_cohomology(const CdgModule<K>& M, const CdgModule<K>& N, int i) {
  auto below = hom_piece_basis(M, N, i - 1);
  auto piece = hom_piece_basis(M, N, i);
  auto above = hom_piece_basis(M, N, i + 1);
  Matrix<K> d_in = detail::hom_diff_matrix(M, N, below, piece);
  Matrix<K> d_out = detail::hom_diff_matrix(M, N, piece, above);
  Matrix<K> square = d_out * d_in;
  if (!(square == Matrix<K>(square.rows(), square.cols())))
    throw PreconditionViolation("hom differential does not square to zero");
  auto cycles = d_out.kernel_basis();
  Matrix<K> cyc = Matrix<K>::from_columns(cycles, (int)piece.size());
  auto ech = Matrix<K>::hstack(d_in, cyc).rref();
  HomCohomology<K> out;
  for (int c : ech.pivots) {
    if (c < d_in.cols()) continue;
    const std::vector<K>& v = cycles[c - d_in.cols()];
    GradedMap<K> rep(M.space, N.space, i);
    for (int l = 0; l < (int)piece.size(); ++l)
      if (!(v[l] == K(0))) rep = rep + piece[l].scaled(v[l]);
    out.representatives.push_back(std::move(rep));
  }
  out.dim = (int)out.representatives.size();
  return out;
}

// Shifts at which hom pieces can be nonzero, read off the two supports.
template <class K>
std::pair<int, int> hom_shift_range(const CdgModule<K>& M, const CdgModule<K>& N) {
  if (M.space.grading == Grading::Z2) return {0, 1};
  auto sm = M.space.support();
  auto sn = N.space.support();
  if (sm.empty() || sn.empty()) return {0, -1};
  return {sn.front() - sm.back(), sn.back() - sm.front()};
}

// True when every hom cohomology group of N against the generators vanishes
// over the relevant shifts (all of them by default).
template <class K>
bool acyclic_wrt(const std::vector<CdgModule<K>>& generators, const CdgModule<K>& N,
                 std::optional<std::pair<int, int>> shifts = std::nullopt) {
  for (auto& X : generators) {
    auto [lo, hi] = shifts ? *shifts : hom_shift_range(X, N);
    for (int i = lo; i <= hi; ++i)
      if (hom_cohomology(X, N, i).dim > 0) return false;
  }
  return true;
}

// Element pair (m, n) with m of degree deg and n of degree deg - offset.
template <class K>
struct SplitPair {
  int deg = 0;
  std::vector<K> m, n;
};

namespace detail {

template <class K>
void check_split_pair(const CdgModule<K>& M, const Splitting<K>& s, const SplitPair<K>& p) {
  if ((int)p.m.size() != M.space.dim(p.deg) ||
      (int)p.n.size() != M.space.dim(p.deg - s.offset))
    throw UsageError("pair coordinates do not match the module degrees");
  Grading gr = M.space.grading;
  auto chk = [&](const AlgElem<K>& e, int want, const char* which) {
    auto dg = elem_deg(e);
    if (dg && norm_deg(gr, *dg) != norm_deg(gr, want))
      throw UsageError(std::string(which) + " has the wrong degree for this splitting");
  };
  chk(s.phi, 1 - s.offset, "phi");
  chk(s.psi, 1 + s.offset, "psi");
}

template <class K>
bool all_zero(const std::vector<K>& v) {
  for (auto& x : v)
    if (!(x == K(0))) return false;
  return true;
}

}  // namespace detail

// Twisted cocycle equations of a pair against a splitting:
//   d(m) + (-1)^j psi n = 0   and   d(n) + (-1)^j phi m = 0,   j = |m|.
template <class K>
bool splitting_cocycle_test(const CdgModule<K>& M, const Splitting<K>& s,
                            const SplitPair<K>& p) {
  detail::check_split_pair(M, s, p);
  int j = p.deg, i = s.offset;
  GradedMap<K> phi = action_of_elem(M, s.phi, 1 - i);
  GradedMap<K> psi = action_of_elem(M, s.psi, 1 + i);
  K sg = koszul_sign<K>(j);
  std::vector<K> e1 = M.d.apply(j, p.m);
  std::vector<K> t1 = psi.apply(j - i, p.n);
  for (size_t l = 0; l < e1.size(); ++l) e1[l] += sg * t1[l];
  std::vector<K> e2 = M.d.apply(j - i, p.n);
  std::vector<K> t2 = phi.apply(j, p.m);
  for (size_t l = 0; l < e2.size(); ++l) e2[l] += sg * t2[l];
  return detail::all_zero(e1) && detail::all_zero(e2);
}

// Twisted boundary test: solve
//   m = d(h) + (-1)^j psi k,   n = d(k) + (-1)^j phi h
// for h of degree j-1 and k of degree j-1-offset, j = |m|.  The sign is
// read at the degree of m in both equations.
template <class K>
std::optional<std::pair<std::vector<K>, std::vector<K>>> splitting_boundary_test(
    const CdgModule<K>& M, const Splitting<K>& s, const SplitPair<K>& p) {
  detail::check_split_pair(M, s, p);
  int j = p.deg, i = s.offset;
  GradedMap<K> phi = action_of_elem(M, s.phi, 1 - i);
  GradedMap<K> psi = action_of_elem(M, s.psi, 1 + i);
  K sg = koszul_sign<K>(j);
  int dh = M.space.dim(j - 1), dk = M.space.dim(j - 1 - i);
  BlockSystem<K> sys;
  if (dh > 0) sys.add_block(0, dh, 1);
  if (dk > 0) sys.add_block(1, dk, 1);
  Matrix<K> one = Matrix<K>::identity(1);
  sys.add_equation({{0, M.d.block(j - 1), one}, {1, psi.block(j - 1 - i).scaled(sg), one}},
                   Matrix<K>::from_columns({p.m}, (int)p.m.size()));
  sys.add_equation({{1, M.d.block(j - 1 - i), one}, {0, phi.block(j - 1).scaled(sg), one}},
                   Matrix<K>::from_columns({p.n}, (int)p.n.size()));
  auto sol = sys.solve();
  if (!sol.x) return std::nullopt;
  Matrix<K> hb = sys.unpack(*sol.x, 0, dh, 1);
  Matrix<K> kb = sys.unpack(*sol.x, 1, dk, 1);
  std::vector<K> h(dh, K(0)), k(dk, K(0));
  for (int r = 0; r < dh; ++r) h[r] = hb.at(r, 0);
  for (int r = 0; r < dk; ++r) k[r] = kb.at(r, 0);
  return std::make_pair(std::move(h), std::move(k));
}

// Interval decomposition of a precomplex: multiset of bars plus an
// invertible change of basis onto the matching sum of intervals.
template <class K>
struct Barcode {
  std::map<std::pair<int, int>, int> bars;  // (birth degree, length) -> multiplicity
  CdgModule<K> canonical;                   // sum of intervals in bar order
  GradedMap<K> change;                      // canonical -> P, degreewise invertible
};

// Chains are extracted longest-first: at each birth degree the new tops are
// a complement of (shorter kernels + continuations of longer chains) inside
// ker d^n, so the produced vectors assemble into a basis.
template <class K>
Barcode<K> barcode_decompose(const CdgModule<K>& P) {
  if (!P.algebra->c_via_dsquared())
    throw UsageError("interval decomposition lives over k[c] and its truncations");
  if (P.mask)
    throw UsageError("interval decomposition needs the full precomplex, not a window");

  std::vector<int> degs = P.space.support();
  struct Chain {
    int a = 0, n = 0;
    std::vector<std::vector<K>> vecs;
  };
  std::vector<Chain> chains;
  if (!degs.empty()) {
    int lo = degs.front(), hi = degs.back();
    int span = hi - lo + 1;
    auto power = [&](int h, int a) {
      Matrix<K> m = Matrix<K>::identity(P.space.dim(a));
      for (int s = 0; s < h; ++s) m = P.d.block(a + s) * m;
      return m;
    };
    auto ker_cols = [&](int h, int a) {
      return Matrix<K>::from_columns(power(h, a).kernel_basis(), P.space.dim(a));
    };
    for (int n = span; n >= 1; --n) {
      for (int a = lo; a <= hi; ++a) {
        if (P.space.dim(a) == 0) continue;
        Matrix<K> U = ker_cols(n, a);
        if (U.cols() == 0) continue;
        Matrix<K> F = ker_cols(n - 1, a);
        if (a - 1 >= lo && P.space.dim(a - 1) > 0)
          F = Matrix<K>::hstack(F, P.d.block(a - 1) * ker_cols(n + 1, a - 1));
        auto ech = Matrix<K>::hstack(F, U).rref();
        for (int c : ech.pivots) {
          if (c < F.cols()) continue;
          Chain ch;
          ch.a = a;
          ch.n = n;
          std::vector<K> v(P.space.dim(a), K(0));
          for (int r = 0; r < (int)v.size(); ++r) v[r] = U.at(r, c - F.cols());
          for (int s = 0; s < n; ++s) {
            ch.vecs.push_back(v);
            if (s + 1 < n) v = P.d.block(a + s).apply(v);
          }
          chains.push_back(std::move(ch));
        }
      }
    }
  }

  std::map<int, int> counted;
  for (auto& ch : chains)
    for (int s = 0; s < ch.n; ++s) ++counted[ch.a + s];
  for (int g : degs)
    if (counted[g] != P.space.dim(g))
      throw PreconditionViolation("interval extraction did not exhaust the module");

  std::stable_sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
    return x.a != y.a ? x.a < y.a : x.n < y.n;
  });

  GradedSpace cspace(Grading::Z, counted);
  GradedMap<K> cd(cspace, cspace, 1);
  GradedMap<K> change(cspace, P.space, 0);
  std::map<int, Matrix<K>> dblk, tblk;
  for (int g : cspace.support()) {
    tblk.emplace(g, Matrix<K>(P.space.dim(g), cspace.dim(g)));
    dblk.emplace(g, Matrix<K>(cspace.dim(g + 1), cspace.dim(g)));
  }
  std::map<int, int> next;
  std::map<std::pair<int, int>, int> bars;
  for (auto& ch : chains) {
    std::vector<int> idx(ch.n);
    for (int s = 0; s < ch.n; ++s) {
      int g = ch.a + s;
      idx[s] = next[g]++;
      for (int r = 0; r < (int)ch.vecs[s].size(); ++r)
        if (!(ch.vecs[s][r] == K(0))) tblk.at(g).set(r, idx[s], ch.vecs[s][r]);
    }
    for (int s = 0; s + 1 < ch.n; ++s) dblk.at(ch.a + s).set(idx[s + 1], idx[s], K(1));
    ++bars[{ch.a, ch.n}];
  }
  for (auto& [g, m] : dblk) cd.set_block(g, m);
  for (auto& [g, m] : tblk) change.set_block(g, m);

  return Barcode<K>{std::move(bars),
                    CdgModule<K>{P.algebra, cspace, std::move(cd), {}, std::nullopt},
                    std::move(change)};
}

// Summand counts for a 2-periodic complex over the curvature-free Z/2 ground
// algebra: two-term strings plus isolated one-dimensional bars, with a
// degreewise invertible change of basis onto the canonical shape.
template <class K>
struct Z2Decomposition {
  int strings = 0;   // rank d0 + rank d1 two-term summands
  int per_even = 0;  // isolated even bars (the even homology)
  int per_odd = 0;
  CdgModule<K> canonical;
  GradedMap<K> change;  // canonical -> M, degreewise invertible
};

template <class K>
Z2Decomposition<K> z2_decompose(const CdgModule<K>& M) {
  const CdgAlgebra<K>& A = *M.algebra;
  if (A.family() != CdgAlgebra<K>::Family::Z2Rho)
    throw UsageError("two-periodic decomposition needs the Z/2 ground algebra");
  if (A.rho() != Rho::Zero)
    throw UnsupportedError("two-periodic decomposition is not implemented for nonzero curvature");
  if (A.with_eps())
    throw UsageError("two-periodic decomposition expects a plain complex without extra actions");

  Matrix<K> d0 = M.d.block(0), d1 = M.d.block(1);
  int m0 = M.space.dim(0), m1 = M.space.dim(1);
  if (!(d1 * d0 == Matrix<K>(m0, m0)) || !(d0 * d1 == Matrix<K>(m1, m1)))
    throw PreconditionViolation("two-periodic input is not a complex: d^2 != 0");

  auto col_of = [](const Matrix<K>& m, int c) {
    std::vector<K> v(m.rows(), K(0));
    for (int r = 0; r < m.rows(); ++r) v[r] = m.at(r, c);
    return v;
  };
  auto e0 = d0.rref();
  auto e1 = d1.rref();
  int r0 = e0.rank, r1 = e1.rank;

  std::vector<std::vector<K>> tops0, tops1, im_d0, im_d1;
  for (int c : e0.pivots) {
    std::vector<K> e(m0, K(0));
    e[c] = K(1);
    tops0.push_back(std::move(e));
    im_d0.push_back(col_of(d0, c));
  }
  for (int c : e1.pivots) {
    std::vector<K> e(m1, K(0));
    e[c] = K(1);
    tops1.push_back(std::move(e));
    im_d1.push_back(col_of(d1, c));
  }
  // homology representatives: complete the image basis inside the kernel
  auto homology = [](const Matrix<K>& fwd, const std::vector<std::vector<K>>& image, int dim) {
    auto ker = fwd.kernel_basis();
    Matrix<K> im = Matrix<K>::from_columns(image, dim);
    auto ech = Matrix<K>::hstack(im, Matrix<K>::from_columns(ker, dim)).rref();
    std::vector<std::vector<K>> reps;
    for (int c : ech.pivots)
      if (c >= im.cols()) reps.push_back(ker[c - im.cols()]);
    return reps;
  };
  auto h0 = homology(d0, im_d1, m0);
  auto h1 = homology(d1, im_d0, m1);

  std::vector<std::vector<K>> even_cols = tops0, odd_cols = im_d0;
  even_cols.insert(even_cols.end(), im_d1.begin(), im_d1.end());
  even_cols.insert(even_cols.end(), h0.begin(), h0.end());
  odd_cols.insert(odd_cols.end(), tops1.begin(), tops1.end());
  odd_cols.insert(odd_cols.end(), h1.begin(), h1.end());
  if ((int)even_cols.size() != m0 || (int)odd_cols.size() != m1)
    throw PreconditionViolation("two-periodic extraction did not exhaust the module");

  GradedSpace cspace = GradedSpace::z2(m0, m1);
  Matrix<K> cd0(m1, m0), cd1(m0, m1);
  for (int t = 0; t < r0; ++t) cd0.set(t, t, K(1));
  for (int t = 0; t < r1; ++t) cd1.set(r0 + t, r0 + t, K(1));
  GradedMap<K> cd(cspace, cspace, 1);
  cd.set_block(0, cd0);
  cd.set_block(1, cd1);
  GradedMap<K> change(cspace, M.space, 0);
  change.set_block(0, Matrix<K>::from_columns(even_cols, m0));
  change.set_block(1, Matrix<K>::from_columns(odd_cols, m1));

  Z2Decomposition<K> out;
  out.strings = r0 + r1;
  out.per_even = (int)h0.size();
  out.per_odd = (int)h1.size();
  out.canonical = CdgModule<K>{M.algebra, cspace, std::move(cd), {}, std::nullopt};
  out.change = std::move(change);
  return out;
}

// Strict isomorphism: a strict module map whose every degree block is
// invertible (non-square blocks fail).
template <class K>
bool strict_iso_check(const GradedMap<K>& f, const CdgModule<K>& M, const CdgModule<K>& N) {
  if (f.shift() != 0) return false;
  if (!check_pdg_map(f, M, N).ok()) return false;
  std::set<int> degs;
  for (int j : M.space.support()) degs.insert(j);
  for (int j : N.space.support()) degs.insert(j);
  for (int j : degs) {
    if (M.space.dim(j) != N.space.dim(j)) return false;
    if (!f.block(j).inverse()) return false;
  }
  return true;
}

}  // namespace cdga
