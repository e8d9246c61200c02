#include "csplit/spectral.hpp"

#include <algorithm>

#include "csplit/errors.hpp"

namespace csplit {

FreeResolution horseshoe(const ModuleMorphism& i, const ModuleMorphism& p, const FreeResolution& sub,
                         const FreeResolution& quot, std::size_t length) {
  if (sub.length() < length || quot.length() < length) throw InvalidInput("horseshoe: input resolutions too short");
  const ModuleRep& u = i.target();
  const Algebra& a = *u.algebra();
  const PrimeField& fld = u.field();
  const std::size_t d = a.dim();

  // Augmentation: i o eps' on Q', a lift of eps'' through p on Q''.
  const Matrix& aug_quot = quot.generator_images(0);
  auto lambda = solve(p.mat(), aug_quot);
  if (!lambda) throw InvariantViolation("horseshoe: quotient augmentation does not lift");
  std::vector<Matrix> images{hstack(i.mat() * sub.generator_images(0), *lambda)};

  Matrix sigma_prev(fld, 0, 0);  // generator images of sigma_{n-1}: Q''_{n-1} -> Q'_{n-2}
  for (std::size_t n = 1; n <= length; ++n) {
    const Matrix& dq = quot.generator_images(n);
    Matrix rhs(fld, 0, 0);
    if (n == 1) {
      // i eps' sigma_1 = -lambda d''_1
      Matrix v = map_from_free(u, *lambda) * dq;
      auto w = solve(i.mat(), -v);
      if (!w) throw InvariantViolation("horseshoe: degree 1 obstruction leaves the submodule");
      rhs = *w;
    } else {
      rhs = -(free_map_matrix(a, sigma_prev) * dq);
    }
    auto sigma = solve(sub.differential(n - 1), rhs);
    if (!sigma) throw InvariantViolation("horseshoe: connecting component does not lift");
    const std::size_t r1 = sub.rank(n), r2 = quot.rank(n);
    const std::size_t s_prev = sub.rank(n - 1), q_prev = quot.rank(n - 1);
    Matrix img(fld, d * (s_prev + q_prev), r1 + r2);
    img.set_block(0, 0, sub.generator_images(n));
    img.set_block(0, r1, *sigma);
    img.set_block(d * s_prev, r1, dq);
    images.push_back(std::move(img));
    sigma_prev = std::move(*sigma);
  }
  return FreeResolution(u, std::move(images));
}

std::optional<std::size_t> SSPage::dim(std::size_t s, std::size_t t) const {
  if (s >= groups.size() || t >= groups[s].size() || !groups[s][t]) return std::nullopt;
  return groups[s][t]->dim();
}

SplittingSpectralSequence::SplittingSpectralSequence(const SplittingContext& ctx, ModuleRep y, ModuleRep x,
                                                     std::size_t s_max, std::size_t t_max)
    : ctx_(&ctx), y_(std::move(y)), x_(std::move(x)), s_max_(s_max), t_max_(t_max) {
  if (s_max < 2 || t_max < 2) throw InvalidInput("spectral sequence bounds must be >= 2");
  require_same_algebra(y_, x_, "spectral sequence");
  if (y_.algebra() != ctx.algebra()) throw InvalidInput("spectral sequence: modules are not over the context algebra");
  const std::size_t cols = columns();
  const std::size_t len = t_max + 1;
  bar_ = bar_resolution(ctx, y_, cols - 1);
  for (std::size_t s = 0; s < cols; ++s) q_.push_back(resolve_shared(bar_.v[s], len));
  cols_.push_back(q_[0]);
  for (std::size_t s = 1; s < cols; ++s)
    cols_.push_back(std::make_shared<const FreeResolution>(
        horseshoe(bar_.inclusion[s], bar_.counit[s], *q_[s], *q_[s - 1], len)));

  e1_.resize(cols);
  for (std::size_t s = 0; s < cols; ++s)
    for (std::size_t t = 0; t <= t_max; ++t) e1_[s].push_back(std::make_shared<const ExtGroup>(cols_[s], x_, t));

  // E_1 with d_1 from the horizontal maps.
  e1_page_.page = 1;
  e1_page_.s_max = s_max;
  e1_page_.t_max = t_max;
  e1_page_.groups.assign(s_max + 1, std::vector<std::optional<Subquotient>>(t_max + 1));
  e1_page_.d.assign(s_max + 1, std::vector<std::optional<Matrix>>(t_max + 1));
  std::vector<std::vector<Matrix>> d1(cols - 1);
  for (std::size_t s = 0; s + 1 < cols; ++s)
    for (std::size_t t = 0; t <= t_max; ++t)
      d1[s].push_back(e1_[s + 1][t]->class_of(horizontal(s, t) * e1_[s][t]->reps()));
  for (std::size_t s = 0; s <= s_max; ++s)
    for (std::size_t t = 0; t <= t_max; ++t) {
      e1_page_.groups[s][t] = e1_[s][t]->presentation();
      if (s + 1 <= s_max) e1_page_.d[s][t] = d1[s][t];
    }

  // E_2: homology of d_1, using the extra column at s_max.
  e2_page_.page = 2;
  e2_page_.s_max = s_max;
  e2_page_.t_max = t_max;
  e2_page_.groups.assign(s_max + 1, std::vector<std::optional<Subquotient>>(t_max + 1));
  e2_page_.d.assign(s_max + 1, std::vector<std::optional<Matrix>>(t_max + 1));
  for (std::size_t s = 0; s <= s_max; ++s)
    for (std::size_t t = 0; t <= t_max; ++t) {
      Subspace num = kernel_basis(d1[s][t]);
      Subspace den = s == 0 ? zero_subspace(x_.field(), e1_[s][t]->dim()) : image_basis(d1[s - 1][t]);
      e2_page_.groups[s][t] = make_subquotient(num, den);
    }
  for (std::size_t s = 0; s + 2 <= s_max; ++s)
    for (std::size_t t = 1; t <= t_max; ++t) e2_page_.d[s][t] = d2(s, t);
}

Matrix SplittingSpectralSequence::vertical(std::size_t s, std::size_t t) const { return e1_[s][t]->coboundary(); }

Matrix SplittingSpectralSequence::horizontal_images(std::size_t s, std::size_t t) const {
  const Algebra& a = *y_.algebra();
  const std::size_t d = a.dim();
  const std::size_t skip = q_[s + 1]->rank(t);  // generators of Q(V_{s+1}) map to zero
  const std::size_t keep = q_[s]->rank(t);
  Matrix m(x_.field(), d * cols_[s]->rank(t), skip + keep);
  for (std::size_t g = 0; g < keep; ++g) m.set_block(g * d, skip + g, a.unit());
  return m;
}

Matrix SplittingSpectralSequence::horizontal(std::size_t s, std::size_t t) const {
  return cochain_pullback(x_, horizontal_images(s, t), cols_[s]->rank(t));
}

Matrix SplittingSpectralSequence::d2(std::size_t s, std::size_t t) const {
  if (t < 1 || t > t_max_ || s + 2 > s_max_) throw InvalidInput("d2: corner outside the bounds");
  const Subquotient& src = *e2_page_.groups[s][t];
  const Subquotient& dst = *e2_page_.groups[s + 2][t - 1];
  Matrix out(x_.field(), dst.dim(), src.dim());
  const Matrix v = vertical(s + 1, t - 1);
  for (std::size_t k = 0; k < src.dim(); ++k) {
    Matrix x = e1_[s][t]->reps() * src.reps.column(k);
    auto y = solve(v, horizontal(s, t) * x);
    if (!y) throw InvariantViolation("d2: zig-zag lift failed");
    Matrix z = horizontal(s + 1, t - 1) * *y;
    Matrix e1c = e1_[s + 2][t - 1]->class_of(z);
    if (!in_span(dst.numerator, e1c)) throw InvariantViolation("d2: image is not a d_1 cycle");
    out.set_block(0, k, dst.project * e1c);
  }
  return out;
}

bool SplittingSpectralSequence::row_cohomology_vanishes() const {
  for (std::size_t t = 0; t <= t_max_; ++t) {
    std::size_t prev_rank = 0;
    for (std::size_t s = 0; s + 1 < columns(); ++s) {
      Matrix h = horizontal(s, t);
      const std::size_t r = rank(h);
      if (r + prev_rank != h.cols()) return false;
      prev_rank = r;
    }
  }
  return true;
}

bool SplittingSpectralSequence::d1_squares_to_zero() const {
  for (std::size_t s = 0; s + 2 <= s_max_; ++s)
    for (std::size_t t = 0; t <= t_max_; ++t)
      if (!((*e1_page_.d[s + 1][t]) * (*e1_page_.d[s][t])).is_zero()) return false;
  return true;
}

SplittingSpectralSequence e1_page(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x,
                                  std::size_t s_max, std::size_t t_max) {
  return SplittingSpectralSequence(ctx, y, x, s_max, t_max);
}

bool E2Report::holds(bool hereditary) const {
  for (bool m : sha_match)
    if (!m) return false;
  if (!bottom_zero) return false;
  return !hereditary || (column1_zero && high_columns_zero);
}

E2Report e2_page(const SplittingSpectralSequence& ss) {
  E2Report rep;
  const SSPage& e2 = ss.e2();
  const ModuleRep& y = ss.e1_group(0, 0).source();
  const ModuleRep& x = ss.e1_group(0, 0).target();
  for (std::size_t t = 0; t <= ss.t_max(); ++t) {
    const Subquotient& g = *e2.groups[0][t];
    ShaGroup sha = sha_n(*ss.context(), y, x, t);
    bool ok = g.denominator.dim() == 0 && same_subspace(g.numerator, sha.kernel);
    rep.sha_match.push_back(ok);
    if (!ok) rep.detail += "E_2^{0," + std::to_string(t) + "} differs from Sha^" + std::to_string(t) + "; ";
  }
  rep.bottom_zero = *e2.dim(0, 0) == 0 && *e2.dim(1, 0) == 0;
  rep.column1_zero = true;
  for (std::size_t t = 0; t <= ss.t_max(); ++t)
    if (*e2.dim(1, t) != 0) rep.column1_zero = false;
  rep.high_columns_zero = true;
  for (std::size_t s = 3; s <= ss.s_max(); ++s)
    for (std::size_t t = 0; t <= ss.t_max(); ++t)
      if (*e2.dim(s, t) != 0) rep.high_columns_zero = false;
  return rep;
}

Matrix double_complex_d2(const SplittingContext& ctx, const ModuleRep& y, const ModuleRep& x, std::size_t s,
                         std::size_t t, std::size_t s_max, std::size_t t_max) {
  SplittingSpectralSequence ss(ctx, y, x, std::max(s_max, s + 2), std::max(t_max, t));
  return ss.d2(s, t);
}

std::size_t CollapseReport::unverifiable() const {
  return static_cast<std::size_t>(std::count_if(interior.begin(), interior.end(), [](const PositionVerdict& v) {
    return v.state == PositionVerdict::State::kUnverifiable;
  }));
}

CollapseReport verify_collapse(const SplittingSpectralSequence& ss) {
  const std::size_t sm = ss.s_max(), tm = ss.t_max();
  const SSPage& e2 = ss.e2();
  auto known = [&](std::size_t s, std::size_t t) {
    return s <= sm && t <= tm && (t == 0 || s + 2 <= sm) && (s < 2 || t + 1 <= tm);
  };
  std::vector<std::vector<std::optional<std::size_t>>> e3(sm + 1, std::vector<std::optional<std::size_t>>(tm + 1));
  CollapseReport rep;
  for (std::size_t s = 0; s <= sm; ++s)
    for (std::size_t t = 0; t <= tm; ++t) {
      if (!known(s, t)) {
        rep.boundary.emplace_back(s, t);
        continue;
      }
      std::size_t out = t >= 1 ? rank(*e2.d[s][t]) : 0;
      std::size_t in = s >= 2 ? rank(*e2.d[s - 2][t + 1]) : 0;
      e3[s][t] = *e2.dim(s, t) - out - in;
    }
  rep.holds = true;
  for (std::size_t s = 0; s <= sm; ++s)
    for (std::size_t t = 0; t <= tm; ++t) {
      if (!e3[s][t]) continue;
      PositionVerdict v{s, t, *e2.dim(s, t), *e3[s][t], PositionVerdict::State::kZero};
      if (v.e3_dim != 0) {
        // Higher differentials d_r, r >= 3, that could still hit or leave (s, t).
        bool open = false;
        for (std::size_t r = 3; r <= t + 1; ++r) {
          std::size_t ts = s + r, tt = t + 1 - r;
          if (ts > sm || !e3[ts][tt] || *e3[ts][tt] != 0) open = true;
        }
        for (std::size_t r = 3; r <= s; ++r) {
          std::size_t ss2 = s - r, tt = t + r - 1;
          if (tt > tm || !e3[ss2][tt] || *e3[ss2][tt] != 0) open = true;
        }
        v.state = open ? PositionVerdict::State::kUnverifiable : PositionVerdict::State::kNonzero;
        if (!open) rep.holds = false;
      }
      rep.interior.push_back(v);
    }
  return rep;
}

}  // namespace csplit
