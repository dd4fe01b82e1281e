#pragma once

#include "symiso/fourier.hpp"
#include "symiso/harmonic.hpp"

namespace symiso {

/// Closed 1-form dU + H on the torus.
struct ClosedForm {
  FourierField exact;  // U, contributing dU
  HarmonicForm harmonic;

  static ClosedForm from_harmonic(const HarmonicForm& h) { return {FourierField(h.n(), 0), h}; }
  static ClosedForm from_exact(const FourierField& u) { return {u, HarmonicForm::zero(u.n())}; }
};

/// Lifts a sampled curve to R^{2n}: each step takes the lattice shift that
/// makes it shortest.
PointSet unwrap_curve(const PointSet& curve);

/// True when the curve's endpoints coincide on the torus.
bool is_closed_curve(const PointSet& curve, double tol = 1e-9);

/// Integral of a constant form along the unwrapped polyline (exact).
double line_integral(const HarmonicForm& alpha, const PointSet& curve);

/// Integral of dU + H along the unwrapped polyline; each segment is split into
/// `panels` Simpson panels.
double line_integral(const ClosedForm& alpha, const PointSet& curve, int panels = 4);

}  // namespace symiso
