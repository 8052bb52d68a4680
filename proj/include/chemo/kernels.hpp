#pragma once

#include "chemo/grid.hpp"

namespace chemo {

/// Cell count above which kernels go parallel; below it loop overhead wins.
inline constexpr int omp_min_cells = 8192;

struct FieldStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double l1 = 0.0;   // hx*hy * sum |f|
    double l2 = 0.0;   // sqrt(hx*hy * sum f^2)
    double linf = 0.0; // max |f|
};

// Grid operators and reductions come in two builds of the same arithmetic:
//
//   ref::   plain serial loops, the oracle the tests trust;
//   kern::  OpenMP-parallel above a cell-count threshold.
//
// Both use the identical per-cell expressions and the identical reduction
// order (serial partial sum per row, rows accumulated in order), so results
// are bitwise equal for any thread count. That order is part of the kernel
// contract; it is what makes runs reproducible across --threads settings.

namespace ref {

double integrate(const ScalarField& f);
double dot_weighted(const ScalarField& a, const ScalarField& b); // hx*hy * sum a_ij b_ij
double norm2(const ScalarField& f);                              // plain euclidean norm
FieldStats field_stats(const ScalarField& f);

void gradient_faces(const ScalarField& f, FaceFluxField& out);
void divergence(const FaceFluxField& flux, ScalarField& out);
void laplacian_neumann(const ScalarField& f, ScalarField& out);

/// out = x - coeff * laplacian(x); same face-difference arithmetic as
/// divergence(gradient_faces(x)) term by term.
void apply_helmholtz(const ScalarField& x, double coeff, ScalarField& out);

/// hx*hy * sum of squared face gradients of f (each interior face once);
/// equals the cell-averaged |grad f|^2 integral for this discretization.
double gradient_energy(const ScalarField& f);

} // namespace ref

namespace kern {

double integrate(const ScalarField& f);
double dot_weighted(const ScalarField& a, const ScalarField& b);
double norm2(const ScalarField& f);
FieldStats field_stats(const ScalarField& f);

void gradient_faces(const ScalarField& f, FaceFluxField& out);
void divergence(const FaceFluxField& flux, ScalarField& out);
void laplacian_neumann(const ScalarField& f, ScalarField& out);
void apply_helmholtz(const ScalarField& x, double coeff, ScalarField& out);
double gradient_energy(const ScalarField& f);

// Vector ops for the iterative solver.
void axpy(ScalarField& y, double a, const ScalarField& x);        // y += a*x
void xpay(ScalarField& y, double a, const ScalarField& x);        // y = x + a*y
void sub(const ScalarField& a, const ScalarField& b, ScalarField& out); // out = a-b

double max_abs_diff(const ScalarField& a, const ScalarField& b);

} // namespace kern

// Value-returning convenience wrappers over kern::.
double integrate(const ScalarField& f);
ScalarField laplacian_neumann(const ScalarField& f);
FaceFluxField gradient_faces(const ScalarField& f);
ScalarField divergence(const FaceFluxField& flux);
FieldStats field_stats(const ScalarField& f);
double gradient_energy(const ScalarField& f);

} // namespace chemo
