#include "symiso/fourier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace symiso {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Multi-index of flat coefficient position p.
void unflatten(std::size_t p, int dim, int K, std::vector<int>& k) {
  const std::size_t W = std::size_t(2 * K + 1);
  k.resize(std::size_t(dim));
  for (int a = dim - 1; a >= 0; --a) {
    k[std::size_t(a)] = int(p % W) - K;
    p /= W;
  }
}

// First nonzero component positive.
bool in_half_space(const std::vector<int>& k) {
  for (int v : k) {
    if (v > 0) return true;
    if (v < 0) return false;
  }
  return false;
}

// out[o][m][i] = sum_k mat[m][k] * in[o][k][i] along one axis of a row-major tensor.
std::vector<cplx> contract_axis(const std::vector<cplx>& in, std::vector<std::size_t>& shape,
                                int axis, const std::vector<cplx>& mat, std::size_t out_len) {
  std::size_t outer = 1, inner = 1;
  for (int b = 0; b < axis; ++b) outer *= shape[std::size_t(b)];
  for (std::size_t b = std::size_t(axis) + 1; b < shape.size(); ++b) inner *= shape[b];
  const std::size_t len = shape[std::size_t(axis)];
  std::vector<cplx> out(outer * out_len * inner, cplx(0.0, 0.0));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t m = 0; m < out_len; ++m) {
      cplx* dst = out.data() + (o * out_len + m) * inner;
      for (std::size_t k = 0; k < len; ++k) {
        const cplx w = mat[m * len + k];
        const cplx* src = in.data() + (o * len + k) * inner;
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  }
  shape[std::size_t(axis)] = out_len;
  return out;
}

// Powers e^{2 pi i k x} for k = 0..K.
inline void powers(double x, int K, cplx* e) {
  const double ang = kTwoPi * x;
  const cplx base(std::cos(ang), std::sin(ang));
  e[0] = cplx(1.0, 0.0);
  for (int k = 1; k <= K; ++k) e[k] = e[k - 1] * base;
}

void eval_plane(const FourierField& f, const PointSet& pts, FieldSamples& out, int order) {
  const int K = f.bandwidth();
  const std::size_t W = std::size_t(2 * K + 1);
  const auto& c = f.coefficients();
  const double c00 = f.mean();
  const std::size_t N = pts.size();
  std::vector<cplx> ex(std::size_t(K) + 1), eyp(std::size_t(K) + 1), ey(W);
  const double* X = pts.axis(0).data();
  const double* Y = pts.axis(1).data();
  const double g = -2.0 * kTwoPi;          // -4 pi
  const double h = -2.0 * kTwoPi * kTwoPi;  // -8 pi^2
  for (std::size_t i = 0; i < N; ++i) {
    powers(X[i], K, ex.data());
    powers(Y[i], K, eyp.data());
    for (int k = 0; k <= K; ++k) {
      ey[std::size_t(K + k)] = eyp[std::size_t(k)];
      ey[std::size_t(K - k)] = std::conj(eyp[std::size_t(k)]);
    }
    double v = 0, gx = 0, gy = 0, hxx = 0, hxy = 0, hyy = 0;
    for (int kx = 0; kx <= K; ++kx) {
      const cplx* row = c.data() + std::size_t(kx + K) * W;
      const int ky0 = kx == 0 ? 1 : -K;
      cplx s0(0, 0), s1(0, 0), s2(0, 0);
      if (order == 0) {
        for (int ky = ky0; ky <= K; ++ky) s0 += row[ky + K] * ey[std::size_t(ky + K)];
      } else if (order == 1) {
        for (int ky = ky0; ky <= K; ++ky) {
          const cplx t = row[ky + K] * ey[std::size_t(ky + K)];
          s0 += t;
          s1 += double(ky) * t;
        }
      } else {
        for (int ky = ky0; ky <= K; ++ky) {
          const cplx t = row[ky + K] * ey[std::size_t(ky + K)];
          s0 += t;
          s1 += double(ky) * t;
          s2 += double(ky * ky) * t;
        }
      }
      const cplx p0 = ex[std::size_t(kx)] * s0;
      v += p0.real();
      if (order >= 1) {
        const cplx p1 = ex[std::size_t(kx)] * s1;
        gx += kx * p0.imag();
        gy += p1.imag();
        if (order >= 2) {
          const cplx p2 = ex[std::size_t(kx)] * s2;
          hxx += double(kx * kx) * p0.real();
          hxy += kx * p1.real();
          hyy += p2.real();
        }
      }
    }
    out.value[i] = c00 + 2.0 * v;
    if (order >= 1) {
      out.grad[i] = g * gx;
      out.grad[N + i] = g * gy;
      if (order >= 2) {
        out.hess[i] = h * hxx;
        out.hess[N + i] = h * hxy;
        out.hess[2 * N + i] = h * hxy;
        out.hess[3 * N + i] = h * hyy;
      }
    }
  }
}

void eval_general(const FourierField& f, const PointSet& pts, FieldSamples& out, int order) {
  const int d = f.dim();
  const int K = f.bandwidth();
  const std::size_t W = std::size_t(2 * K + 1);
  const auto& c = f.coefficients();
  struct Term {
    std::vector<int> k;
    cplx c;
  };
  std::vector<Term> terms;
  std::vector<int> k;
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] == cplx(0, 0)) continue;
    unflatten(p, d, K, k);
    if (in_half_space(k)) terms.push_back({k, c[p]});
  }
  const std::size_t N = pts.size();
  const double c00 = f.mean();
  std::vector<cplx> e(std::size_t(d) * W), tmp(std::size_t(K) + 1);
  std::vector<double> gacc(static_cast<std::size_t>(d)), hacc(static_cast<std::size_t>(d * d));
  for (std::size_t i = 0; i < N; ++i) {
    for (int a = 0; a < d; ++a) {
      powers(pts.at(a, i), K, tmp.data());
      cplx* ea = e.data() + std::size_t(a) * W;
      for (int q = 0; q <= K; ++q) {
        ea[K + q] = tmp[std::size_t(q)];
        ea[K - q] = std::conj(tmp[std::size_t(q)]);
      }
    }
    double v = 0;
    std::fill(gacc.begin(), gacc.end(), 0.0);
    std::fill(hacc.begin(), hacc.end(), 0.0);
    for (const Term& t : terms) {
      cplx p = t.c;
      for (int a = 0; a < d; ++a) p *= e[std::size_t(a) * W + std::size_t(t.k[std::size_t(a)] + K)];
      v += p.real();
      if (order >= 1) {
        for (int a = 0; a < d; ++a) gacc[std::size_t(a)] += t.k[std::size_t(a)] * p.imag();
        if (order >= 2) {
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
              hacc[std::size_t(a * d + b)] +=
                  double(t.k[std::size_t(a)] * t.k[std::size_t(b)]) * p.real();
        }
      }
    }
    out.value[i] = c00 + 2.0 * v;
    for (int a = 0; order >= 1 && a < d; ++a) out.grad[std::size_t(a) * N + i] = -2.0 * kTwoPi * gacc[std::size_t(a)];
    for (int ab = 0; order >= 2 && ab < d * d; ++ab)
      out.hess[std::size_t(ab) * N + i] = -2.0 * kTwoPi * kTwoPi * hacc[std::size_t(ab)];
  }
}

}  // namespace

FourierField::FourierField(int n, int bandwidth) : n_(n), K_(bandwidth) {
  if (n < 1 || bandwidth < 0) throw Error("FourierField: invalid shape");
  c_.assign(ipow(std::size_t(2 * K_ + 1), 2 * n_), cplx(0.0, 0.0));
}

std::size_t FourierField::index(std::span<const int> k) const {
  if (int(k.size()) != dim()) throw Error("FourierField: multi-index has wrong length");
  std::size_t p = 0;
  for (int v : k) {
    if (v < -K_ || v > K_) throw Error("FourierField: multi-index outside bandwidth");
    p = p * std::size_t(width()) + std::size_t(v + K_);
  }
  return p;
}

cplx FourierField::coeff(std::span<const int> k) const {
  for (int v : k)
    if (v < -K_ || v > K_) return {0.0, 0.0};
  return c_[index(k)];
}

void FourierField::set_mode(std::span<const int> k, cplx c) {
  std::vector<int> mk(k.begin(), k.end());
  for (int& v : mk) v = -v;
  const std::size_t p = index(k), q = index(mk);
  if (p == q) {
    c_[p] = cplx(c.real(), 0.0);
  } else {
    c_[p] = c;
    c_[q] = std::conj(c);
  }
}

void FourierField::add_mode(std::span<const int> k, cplx c) {
  set_mode(k, c_[index(k)] + c);
}

void FourierField::symmetrize() {
  const std::size_t L = c_.size();
  // Flat index of -k is L-1-p for the centred layout.
  for (std::size_t p = 0; p < L / 2; ++p) {
    const std::size_t q = L - 1 - p;
    const cplx avg = 0.5 * (c_[p] + std::conj(c_[q]));
    c_[p] = avg;
    c_[q] = std::conj(avg);
  }
  c_[L / 2] = cplx(c_[L / 2].real(), 0.0);
}

bool FourierField::is_zero(double tol) const {
  for (const cplx& v : c_)
    if (std::abs(v) > tol) return false;
  return true;
}

FourierField FourierField::constant(int n, double c) {
  FourierField f(n, 0);
  f.c_[0] = cplx(c, 0.0);
  return f;
}

FourierField FourierField::cosine(int n, std::vector<int> k, double amp, double phase) {
  int K = 0;
  for (int v : k) K = std::max(K, std::abs(v));
  FourierField f(n, K);
  bool zero = std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
  if (zero) {
    f.c_[f.index(k)] = cplx(amp * std::cos(phase), 0.0);
  } else {
    f.set_mode(k, 0.5 * amp * std::polar(1.0, phase));
  }
  return f;
}

FourierField FourierField::sine(int n, std::vector<int> k, double amp, double phase) {
  return cosine(n, std::move(k), amp, phase - std::numbers::pi / 2.0);
}

FourierField FourierField::resized(int bandwidth) const {
  if (bandwidth == K_) return *this;
  FourierField out(n_, bandwidth);
  std::vector<int> k;
  for (std::size_t p = 0; p < c_.size(); ++p) {
    if (c_[p] == cplx(0, 0)) continue;
    unflatten(p, dim(), K_, k);
    bool inside = std::all_of(k.begin(), k.end(), [&](int v) { return std::abs(v) <= bandwidth; });
    if (inside) out.c_[out.index(k)] = c_[p];
  }
  return out;
}

FourierField FourierField::translated(std::span<const double> v) const {
  if (int(v.size()) != dim()) throw Error("translated: dimension mismatch");
  FourierField out = *this;
  std::vector<int> k;
  for (std::size_t p = 0; p < c_.size(); ++p) {
    if (c_[p] == cplx(0, 0)) continue;
    unflatten(p, dim(), K_, k);
    double ph = 0.0;
    for (int a = 0; a < dim(); ++a) ph += k[std::size_t(a)] * v[std::size_t(a)];
    out.c_[p] = c_[p] * std::polar(1.0, kTwoPi * ph);
  }
  return out;
}

FourierField FourierField::trimmed(double tol) const {
  int K = 0;
  std::vector<int> k;
  for (std::size_t p = 0; p < c_.size(); ++p) {
    if (std::abs(c_[p]) <= tol) continue;
    unflatten(p, dim(), K_, k);
    for (int v : k) K = std::max(K, std::abs(v));
  }
  FourierField out = resized(K);
  for (cplx& v : out.c_)
    if (std::abs(v) <= tol) v = cplx(0.0, 0.0);
  return out;
}

FourierField FourierField::normalized() const {
  FourierField out = *this;
  out.c_[out.c_.size() / 2] = cplx(0.0, 0.0);
  return out;
}

FourierField& FourierField::operator+=(const FourierField& o) {
  if (o.n_ != n_) throw Error("FourierField: dimension mismatch");
  if (o.K_ > K_) *this = resized(o.K_);
  const FourierField& b = o.K_ == K_ ? o : o.resized(K_);
  for (std::size_t p = 0; p < c_.size(); ++p) c_[p] += b.c_[p];
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& o) { return *this += -1.0 * FourierField(o); }

FourierField& FourierField::operator*=(double s) {
  for (cplx& v : c_) v *= s;
  return *this;
}

double FourierField::sup_bound() const {
  double s = 0.0;
  for (std::size_t p = 0; p < c_.size(); ++p) s += std::abs(c_[p]);
  return s;
}

double FourierField::gradient_bound() const {
  double s = 0.0;
  std::vector<int> k;
  for (std::size_t p = 0; p < c_.size(); ++p) {
    if (c_[p] == cplx(0, 0)) continue;
    unflatten(p, dim(), K_, k);
    double kk = 0;
    for (int v : k) kk += double(v) * v;
    s += kTwoPi * std::sqrt(kk) * std::abs(c_[p]);
  }
  return s;
}

double FourierField::hessian_bound() const {
  double s = 0.0;
  std::vector<int> k;
  for (std::size_t p = 0; p < c_.size(); ++p) {
    if (c_[p] == cplx(0, 0)) continue;
    unflatten(p, dim(), K_, k);
    double kk = 0;
    for (int v : k) kk += double(v) * v;
    s += kTwoPi * kTwoPi * kk * std::abs(c_[p]);
  }
  return s;
}

double FourierField::value(std::span<const double> x) const {
  PointSet p(dim(), 1);
  p.set(0, x);
  FieldSamples s;
  evaluate(p, s, 0);
  return s.value[0];
}

void FourierField::evaluate(const PointSet& pts, FieldSamples& out, int order) const {
  if (pts.dim() != dim()) throw Error("FourierField::evaluate: dimension mismatch");
  const std::size_t N = pts.size();
  const int d = dim();
  out.count = N;
  out.dim = d;
  out.value.assign(N, 0.0);
  out.grad.assign(order >= 1 ? std::size_t(d) * N : 0, 0.0);
  out.hess.assign(order >= 2 ? std::size_t(d * d) * N : 0, 0.0);
  if (d == 2)
    eval_plane(*this, pts, out, order);
  else
    eval_general(*this, pts, out, order);
}

double GridField::mean() const {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / double(values.size());
}

double GridField::osc() const {
  if (values.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

GridField GridField::normalized() const {
  GridField out = *this;
  const double m = mean();
  for (double& v : out.values) v -= m;
  return out;
}

GridField& GridField::operator-=(const GridField& o) {
  if (o.values.size() != values.size()) throw Error("GridField: size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

GridField synthesize(const FourierField& f, int res) {
  const int d = f.dim();
  const int K = f.bandwidth();
  const std::size_t W = std::size_t(f.width());
  std::vector<cplx> mat(std::size_t(res) * W);
  for (int m = 0; m < res; ++m)
    for (std::size_t w = 0; w < W; ++w)
      mat[std::size_t(m) * W + w] =
          std::polar(1.0, kTwoPi * double((int(w) - K) * m % res) / double(res));
  std::vector<std::size_t> shape(std::size_t(d), W);
  std::vector<cplx> t = f.coefficients();
  for (int a = d - 1; a >= 0; --a) t = contract_axis(t, shape, a, mat, std::size_t(res));
  GridField out;
  out.dim = d;
  out.res = res;
  out.values.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out.values[i] = t[i].real();
  return out;
}

FourierField project(const GridField& f, int n, int K, double trim_tol, ProjectionReport* report) {
  const int d = 2 * n;
  if (f.dim != d) throw Error("project: dimension mismatch");
  if (2 * K >= f.res) throw Error("project: bandwidth must stay below the grid Nyquist index");
  const std::size_t W = std::size_t(2 * K + 1);
  std::vector<cplx> mat(W * std::size_t(f.res));
  for (std::size_t w = 0; w < W; ++w)
    for (int m = 0; m < f.res; ++m) {
      const long km = long(int(w) - K) * m % f.res;
      mat[w * std::size_t(f.res) + std::size_t(m)] =
          std::polar(1.0 / f.res, -kTwoPi * double(km) / double(f.res));
    }
  std::vector<std::size_t> shape(std::size_t(d), std::size_t(f.res));
  std::vector<cplx> t(f.values.begin(), f.values.end());
  for (int a = d - 1; a >= 0; --a) t = contract_axis(t, shape, a, mat, W);
  FourierField out(n, K);
  out.coefficients_mut() = std::move(t);
  out.symmetrize();
  out = out.trimmed(trim_tol);
  if (report) {
    GridField back = synthesize(out, f.res);
    double r = 0.0;
    for (std::size_t i = 0; i < back.values.size(); ++i)
      r = std::max(r, std::abs(back.values[i] - f.values[i]));
    report->max_residual = r;
    report->bandwidth = out.bandwidth();
  }
  return out;
}

double volume_integral(const FourierField& f) { return f.mean(); }
double volume_integral(const GridField& f) { return f.mean(); }

namespace {

// Maximizes sign*f starting from x with damped Newton steps; returns the best value of sign*f.
double polish(const FourierField& f, std::vector<double> x, double sign, double cell, double start) {
  const int d = f.dim();
  PointSet p(d, 1);
  FieldSamples s;
  double best = start;
  for (int it = 0; it < 25; ++it) {
    p.set(0, x);
    f.evaluate(p, s, 2);
    Eigen::VectorXd g(d);
    Eigen::MatrixXd H(d, d);
    for (int a = 0; a < d; ++a) {
      g(a) = sign * s.grad_at(a, 0);
      for (int b = 0; b < d; ++b) H(a, b) = sign * s.hess_at(a, b, 0);
    }
    // Newton on |curvature|: flat directions (fields constant along an axis) and
    // saddles would stall a plain Cholesky step.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(-H);
    Eigen::VectorXd lam = eig.eigenvalues().cwiseAbs();
    const double floor = 1e-8 * std::max(lam.maxCoeff(), 1e-300);
    lam = lam.cwiseMax(floor);
    Eigen::VectorXd step = eig.eigenvectors() * (eig.eigenvectors().transpose() * g).cwiseQuotient(lam);
    const double len = step.cwiseAbs().maxCoeff();
    if (len > cell) step *= cell / len;
    bool improved = false;
    for (int half = 0; half < 6 && !improved; ++half) {
      std::vector<double> y = x;
      for (int a = 0; a < d; ++a) y[std::size_t(a)] += step(a);
      const double v = sign * f.value(y);
      if (v >= best) {
        best = v;
        x = std::move(y);
        improved = true;
      }
      step *= 0.5;
    }
    if (!improved || len < 1e-15) break;
  }
  return best;
}

double extremum(const FourierField& f, const GridField& g, double sign) {
  const int d = g.dim;
  const std::size_t R = std::size_t(g.res);
  const std::size_t N = g.values.size();
  std::vector<std::size_t> stride(std::size_t(d), 1);
  for (int a = d - 2; a >= 0; --a) stride[std::size_t(a)] = stride[std::size_t(a) + 1] * R;
  std::vector<std::pair<double, std::size_t>> cand;
  double grid_best = -INFINITY;
  for (std::size_t i = 0; i < N; ++i) {
    const double v = sign * g.values[i];
    grid_best = std::max(grid_best, v);
    bool local = true;
    for (int a = 0; a < d && local; ++a) {
      const std::size_t ia = (i / stride[std::size_t(a)]) % R;
      const std::size_t base = i - ia * stride[std::size_t(a)];
      const std::size_t up = base + ((ia + 1) % R) * stride[std::size_t(a)];
      const std::size_t dn = base + ((ia + R - 1) % R) * stride[std::size_t(a)];
      if (sign * g.values[up] > v || sign * g.values[dn] > v) local = false;
    }
    if (local) cand.emplace_back(v, i);
  }
  std::sort(cand.begin(), cand.end(), [](auto& a, auto& b) { return a.first > b.first; });
  if (cand.size() > 6) cand.resize(6);
  double best = grid_best;
  const double cell = 1.0 / double(R);
  for (auto& [v, i] : cand) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) x[std::size_t(a)] = double((i / stride[std::size_t(a)]) % R) * cell;
    best = std::max(best, polish(f, x, sign, cell, v));
  }
  return sign * best;
}

}  // namespace

double osc(const FourierField& f, int res) {
  if (f.bandwidth() == 0) return 0.0;
  // The scan only has to land in the right basins; Newton polish does the rest.
  // Sixteen samples across the shortest wavelength is plenty for that.
  res = std::min(res, std::max(16, 16 * f.bandwidth()));
  GridField g = synthesize(f, res);
  return extremum(f, g, 1.0) - extremum(f, g, -1.0);
}

double osc(const GridField& f) { return f.osc(); }

FourierField normalize(const FourierField& f) { return f.normalized(); }
GridField normalize(const GridField& f) { return f.normalized(); }

int osc_resolution(const TorusSpec& spec) {
  int res = 4 * spec.grid_res;
  const int d = spec.dim();
  while (d > 2 && std::pow(double(res), d) > double(1 << 20) && res > 16) res /= 2;
  return res;
}

}  // namespace symiso
