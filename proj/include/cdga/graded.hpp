#pragma once

#include <map>
#include <vector>

#include "cdga/field.hpp"
#include "cdga/matrix.hpp"

namespace cdga {

enum class Grading { Z, Z2 };

inline int norm_deg(Grading g, int i) {
  return g == Grading::Z2 ? ((i % 2) + 2) % 2 : i;
}

// Finite degree range used to bound sweeps over infinite Z-graded objects.
// Z/2-graded objects always enumerate both parities.
struct Window {
  int lo = -10;
  int hi = 10;

  Window() = default;
  Window(int l, int h) : lo(l), hi(h) {
    if (l > h) throw UsageError("empty degree window");
  }

  bool contains(int i) const { return lo <= i && i <= hi; }

  std::vector<int> degrees(Grading g) const {
    if (g == Grading::Z2) return {0, 1};
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
};

// Finite-dimensional graded vector space: a dimension per degree, zero
// elsewhere. Z2 degrees are normalized mod 2 on every access.
struct GradedSpace {
  Grading grading = Grading::Z;
  std::map<int, int> dims;  // only nonzero dimensions are stored

  GradedSpace() = default;
  GradedSpace(Grading g, std::map<int, int> d) : grading(g) {
    for (auto& [i, n] : d) {
      if (n < 0) throw UsageError("negative dimension in graded space");
      if (n > 0) dims[norm_deg(g, i)] += n;
    }
  }

  static GradedSpace z(std::map<int, int> d) { return GradedSpace(Grading::Z, std::move(d)); }
  static GradedSpace z2(int d0, int d1) {
    return GradedSpace(Grading::Z2, {{0, d0}, {1, d1}});
  }

  int dim(int i) const {
    auto it = dims.find(norm_deg(grading, i));
    return it == dims.end() ? 0 : it->second;
  }

  int total_dim() const {
    int t = 0;
    for (auto& [i, n] : dims) t += n;
    return t;
  }

  std::vector<int> support() const {
    std::vector<int> s;
    for (auto& [i, n] : dims) s.push_back(i);
    return s;
  }

  // Degree i of the shift is degree i+n of the original.
  GradedSpace shifted(int n) const {
    GradedSpace r;
    r.grading = grading;
    for (auto& [i, d] : dims) r.dims[norm_deg(grading, i - n)] = d;
    return r;
  }

  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;
};

// Degree-homogeneous linear map of graded spaces. Blocks are indexed by
// source degree i; block(i) has shape dim_target(i+shift) x dim_source(i).
// Only nonzero blocks are stored, so equality is structural.
template <class K>
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(GradedSpace source, GradedSpace target, int shift)
      : source_(std::move(source)), target_(std::move(target)), shift_(shift) {
    if (source_.grading != target_.grading)
      throw UsageError("graded map across different gradings");
    if (source_.grading == Grading::Z2) shift_ = norm_deg(Grading::Z2, shift_);
  }

  const GradedSpace& source() const { return source_; }
  const GradedSpace& target() const { return target_; }
  int shift() const { return shift_; }

  Matrix<K> block(int i) const {
    int d = norm_deg(source_.grading, i);
    auto it = blocks_.find(d);
    if (it != blocks_.end()) return it->second;
    return Matrix<K>(target_.dim(d + shift_), source_.dim(d));
  }

  void set_block(int i, const Matrix<K>& m) {
    int d = norm_deg(source_.grading, i);
    if (m.rows() != target_.dim(d + shift_) || m.cols() != source_.dim(d))
      throw UsageError("graded map block has wrong shape");
    if (m.is_zero())
      blocks_.erase(d);
    else
      blocks_[d] = m;
  }

  void set_entry(int i, int r, int c, const K& v) {
    Matrix<K> b = block(i);
    b.set(r, c, v);
    set_block(i, b);
  }

  const std::map<int, Matrix<K>>& blocks() const { return blocks_; }
  bool is_zero() const { return blocks_.empty(); }

  std::vector<K> apply(int i, const std::vector<K>& v) const { return block(i).apply(v); }

  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.shift_ == b.shift_ &&
           a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const GradedMap& a, const GradedMap& b) { return !(a == b); }

  GradedMap operator+(const GradedMap& o) const {
    if (source_ != o.source_ || target_ != o.target_ || shift_ != o.shift_)
      throw UsageError("graded map sum shape mismatch");
    GradedMap r = *this;
    for (auto& [i, m] : o.blocks_) r.set_block(i, r.block(i) + m);
    return r;
  }
  GradedMap operator-(const GradedMap& o) const { return *this + o.scaled(K(-1)); }

  GradedMap scaled(const K& s) const {
    GradedMap r(source_, target_, shift_);
    if (s == K(0)) return r;
    for (auto& [i, m] : blocks_) r.set_block(i, m.scaled(s));
    return r;
  }

 private:
  GradedSpace source_, target_;
  int shift_ = 0;
  std::map<int, Matrix<K>> blocks_;
};

template <class K>
GradedMap<K> zero_map(const GradedSpace& source, const GradedSpace& target, int shift) {
  return GradedMap<K>(source, target, shift);
}

template <class K>
GradedMap<K> identity_map(const GradedSpace& space) {
  GradedMap<K> id(space, space, 0);
  for (int i : space.support()) id.set_block(i, Matrix<K>::identity(space.dim(i)));
  return id;
}

template <class K>
GradedMap<K> compose(const GradedMap<K>& g, const GradedMap<K>& f) {
  if (f.target() != g.source()) throw UsageError("graded map composition mismatch");
  GradedMap<K> r(f.source(), g.target(), f.shift() + g.shift());
  for (int i : f.source().support())
    r.set_block(i, g.block(i + f.shift()) * f.block(i));
  return r;
}

// Reindex a map along the shift functor: no signs here. Sign conventions
// for differentials live with the module layer.
template <class K>
GradedMap<K> shift_map(const GradedMap<K>& f, int n) {
  GradedMap<K> r(f.source().shifted(n), f.target().shifted(n), f.shift());
  for (int i : r.source().support()) r.set_block(i, f.block(i + n));
  return r;
}

struct SumLayout {
  GradedSpace sum;
  // offset of each summand's basis inside the sum, per degree
  std::vector<std::map<int, int>> offsets;
};

inline SumLayout direct_sum_layout(const std::vector<GradedSpace>& parts) {
  if (parts.empty()) throw UsageError("empty direct sum");
  SumLayout lay;
  lay.sum.grading = parts[0].grading;
  lay.offsets.resize(parts.size());
  std::map<int, int> cursor;
  for (size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].grading != lay.sum.grading)
      throw UsageError("direct sum across different gradings");
    for (auto& [i, d] : parts[k].dims) {
      lay.offsets[k][i] = cursor[i];
      cursor[i] += d;
    }
  }
  for (auto& [i, d] : cursor)
    if (d > 0) lay.sum.dims[i] = d;
  return lay;
}

template <class K>
GradedMap<K> sum_inclusion(const SumLayout& lay, const std::vector<GradedSpace>& parts,
                           size_t k) {
  GradedMap<K> incl(parts[k], lay.sum, 0);
  for (int i : parts[k].support()) {
    Matrix<K> b(lay.sum.dim(i), parts[k].dim(i));
    b.insert_block(lay.offsets[k].at(i), 0, Matrix<K>::identity(parts[k].dim(i)));
    incl.set_block(i, b);
  }
  return incl;
}

template <class K>
GradedMap<K> sum_projection(const SumLayout& lay, const std::vector<GradedSpace>& parts,
                            size_t k) {
  GradedMap<K> proj(lay.sum, parts[k], 0);
  for (int i : parts[k].support()) {
    Matrix<K> b(parts[k].dim(i), lay.sum.dim(i));
    b.insert_block(0, lay.offsets[k].at(i), Matrix<K>::identity(parts[k].dim(i)));
    proj.set_block(i, b);
  }
  return proj;
}

// Fold a bounded Z-graded space onto Z/2 by summing parities; basis order
// within each parity follows ascending degree.
inline GradedSpace collapse_z2_space(const GradedSpace& s) {
  if (s.grading != Grading::Z) throw UsageError("collapse expects a Z-graded space");
  int d0 = 0, d1 = 0;
  for (auto& [i, d] : s.dims) (norm_deg(Grading::Z2, i) == 0 ? d0 : d1) += d;
  return GradedSpace::z2(d0, d1);
}

inline std::map<int, int> collapse_offsets(const GradedSpace& s) {
  std::map<int, int> off;
  int c0 = 0, c1 = 0;
  for (auto& [i, d] : s.dims) {
    int& c = norm_deg(Grading::Z2, i) == 0 ? c0 : c1;
    off[i] = c;
    c += d;
  }
  return off;
}

template <class K>
GradedMap<K> collapse_z2_map(const GradedMap<K>& f) {
  GradedSpace s2 = collapse_z2_space(f.source());
  GradedSpace t2 = collapse_z2_space(f.target());
  GradedMap<K> r(s2, t2, f.shift());
  auto soff = collapse_offsets(f.source());
  auto toff = collapse_offsets(f.target());
  Matrix<K> b0(t2.dim(f.shift()), s2.dim(0));
  Matrix<K> b1(t2.dim(1 + f.shift()), s2.dim(1));
  for (int i : f.source().support()) {
    Matrix<K> blk = f.block(i);
    if (blk.is_zero()) continue;
    Matrix<K>& dst = norm_deg(Grading::Z2, i) == 0 ? b0 : b1;
    dst.insert_block(toff.at(i + f.shift()), soff.at(i), blk);
  }
  r.set_block(0, b0);
  r.set_block(1, b1);
  return r;
}

}  // namespace cdga
