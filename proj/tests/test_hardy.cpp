#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "opbmo/hardy.hpp"
#include "opbmo/operators.hpp"
#include "opbmo/sweep.hpp"

using namespace opbmo;

TEST_CASE("circledast basics") {
    // f = h_T e, g = chi_T d: only the I = T term survives, giving h_T (e x d).
    Vec e(2), d(2);
    e << 1.0, 2.0;
    d << Complex(0.0, 1.0), 1.0;
    VectorField f(2, 1), g(2, 1);
    f.value(0) = e;
    f.value(1) = -e;
    g.value(0) = d;
    g.value(1) = d;
    const TraceField prod = circledast(f, g);
    const Mat expect = e * d.adjoint();
    CHECK((prod.cells[0] - expect).norm() <= 1e-13);
    CHECK((prod.cells[1] + expect).norm() <= 1e-13);

    // Zero factor annihilates.
    const VectorField zero(2, 1);
    CHECK(circledast(zero, g).cells[0].norm() == doctest::Approx(0.0));
    CHECK(circledast(f, zero).cells[1].norm() == doctest::Approx(0.0));

    VectorField mismatched(3, 1);
    CHECK_THROWS_AS(circledast(f, mismatched), std::invalid_argument);
}

TEST_CASE("circledast: bilinearity and expectation multiplicativity") {
    Rng rng(3);
    const VectorField f = random_field(2, 3, rng);
    const VectorField f2 = random_field(2, 3, rng);
    const VectorField g = random_field(2, 3, rng);
    const Complex c(1.25, -0.5);

    // Linear in the first slot.
    VectorField combo(2, 3);
    for (std::int64_t cell = 0; cell < combo.cell_count(); ++cell)
        combo.value(cell) = f.value(cell) + c * f2.value(cell);
    const TraceField lhs = circledast(combo, g);
    const TraceField a = circledast(f, g);
    const TraceField b = circledast(f2, g);
    for (std::size_t cell = 0; cell < lhs.cells.size(); ++cell)
        CHECK((lhs.cells[cell] - (a.cells[cell] + c * b.cells[cell])).norm() <= 1e-11);

    // E_k (f (*) g) = (E_k f) (*) (E_k g) for every k.
    for (int k = 0; k <= 3; ++k) {
        const MatrixSymbol prod_sym = MatrixSymbol::from_cells(circledast(f, g).cells);
        const auto lhs_cells = expectation(prod_sym, k).cells();
        FieldCoeffs fk = analyze_field(f);
        FieldCoeffs gk = analyze_field(g);
        for (int level = k; level < 3; ++level) {
            for (auto& v : fk.coeffs[static_cast<std::size_t>(level)]) v.setZero();
            for (auto& v : gk.coeffs[static_cast<std::size_t>(level)]) v.setZero();
        }
        const TraceField rhs = circledast(synthesize_field(fk), synthesize_field(gk));
        for (std::size_t cell = 0; cell < rhs.cells.size(); ++cell)
            CHECK(rel_diff(lhs_cells[cell], rhs.cells[cell]) <= 1e-11);
    }
}

TEST_CASE("pairing: single-term evaluation and duality with the multiplier") {
    // B = h_T A, F = h_T (e x d): pairing = <A e, d>.
    Mat a(2, 2);
    a << 1.0, Complex(0, 2), 0.5, -1.0;
    MatrixSymbol b(2, 1);
    b.set_coeff(0, 0, a);
    Vec e(2), d(2);
    e << 1.0, -1.0;
    d << Complex(0, 1), 2.0;
    TraceField f(2, 1);
    f.cells[0] = e * d.adjoint();
    f.cells[1] = -e * d.adjoint();
    const Complex expect = d.adjoint() * (a * e);
    CHECK(std::abs(pairing(b, f) - expect) <= 1e-13);

    // F = 0 pairs to zero.
    const TraceField zero(2, 1);
    CHECK(std::abs(pairing(b, zero)) == doctest::Approx(0.0));

    // <B, f (*) g> = <Lambda_B f, g> for zero-mean f.
    Rng rng(5);
    for (int i = 0; i < 8; ++i) {
        const int dim = 1 + static_cast<int>(rng.next_below(3));
        const int depth = 1 + static_cast<int>(rng.next_below(4));
        const MatrixSymbol r = random_symbol(dim, depth, rng);
        const VectorField f0 = zero_mean_part(random_field(dim, depth, rng));
        const VectorField g = random_field(dim, depth, rng);
        const Complex lhs = pairing(r, circledast(f0, g));
        const Complex rhs = l2_inner(apply_matrix_free(OperatorKind::mult, r, f0), g);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }

    TraceField mismatched(3, 1);
    CHECK_THROWS_AS(pairing(b, mismatched), std::invalid_argument);
}

TEST_CASE("pairing is bilinear and bounded by sup-norm times trace mass") {
    Rng rng(7);
    const MatrixSymbol b = random_symbol(2, 3, rng);
    const VectorField f = random_field(2, 3, rng);
    const VectorField g = random_field(2, 3, rng);
    const TraceField prod = circledast(f, g);

    TraceField scaled = prod;
    const Complex c(2.0, 1.0);
    for (auto& cell : scaled.cells) cell *= c;
    CHECK(std::abs(pairing(b, scaled) - c * pairing(b, prod)) <= 1e-11);

    const auto cells = b.cells();
    double sup = 0.0;
    for (const Mat& m : cells) sup = std::max(sup, op_norm(m));
    CHECK(std::abs(pairing(b, prod)) <= sup * trace_norm_l1(prod) + 1e-10);
}

TEST_CASE("maximal function basics") {
    // Constant trace field: F* is the constant trace norm.
    TraceField f(2, 2);
    Mat a(2, 2);
    a << 1.0, 0.0, 0.0, -2.0;
    for (auto& cell : f.cells) cell = a;
    const auto fstar = maximal(f);
    for (double v : fstar) CHECK(v == doctest::Approx(3.0));

    // Scalar h_T: every ancestor average of |h_T| is 1.
    VectorField h(1, 2);
    for (std::int64_t c = 0; c < h.cell_count(); ++c) {
        Vec v(1);
        v(0) = (c < 2) ? 1.0 : -1.0;
        h.value(c) = v;
    }
    for (double v : maximal(h)) CHECK(v == doctest::Approx(1.0));

    CHECK_THROWS_AS(maximal_profile({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("maximal function is monotone") {
    Rng rng(11);
    std::vector<double> lo(8), hi(8);
    for (int c = 0; c < 8; ++c) {
        lo[static_cast<std::size_t>(c)] = std::abs(rng.next_gaussian());
        hi[static_cast<std::size_t>(c)] =
            lo[static_cast<std::size_t>(c)] + std::abs(rng.next_gaussian());
    }
    const auto mlo = maximal_profile(lo);
    const auto mhi = maximal_profile(hi);
    for (int c = 0; c < 8; ++c)
        CHECK(mlo[static_cast<std::size_t>(c)] <= mhi[static_cast<std::size_t>(c)] + 1e-15);
}

TEST_CASE("maximal-function estimate for circledast products") {
    Rng rng(13);
    for (int i = 0; i < 8; ++i) {
        const int dim = 1 + static_cast<int>(rng.next_below(3));
        const int depth = 1 + static_cast<int>(rng.next_below(4));
        const VectorField f0 = zero_mean_part(random_field(dim, depth, rng));
        const VectorField g0 = zero_mean_part(random_field(dim, depth, rng));
        const TraceField prod = circledast(f0, g0);

        const auto lhs = martingale_maximal(prod);
        const auto fstar = maximal(f0);
        const auto gstar = maximal(g0);
        const FieldCoeffs fc = analyze_field(f0);
        const FieldCoeffs gc = analyze_field(g0);

        double l1 = 0.0;
        for (std::int64_t c = 0; c < f0.cell_count(); ++c) {
            double prefix = 0.0;
            for (int level = 0; level < depth; ++level) {
                const std::int64_t p = ancestor_pos(c, depth, level);
                prefix += std::ldexp(1.0, level) * fc.at(level, p).norm() *
                          gc.at(level, p).norm();
            }
            const double rhs = fstar[static_cast<std::size_t>(c)] *
                                   gstar[static_cast<std::size_t>(c)] +
                               prefix;
            CHECK(lhs[static_cast<std::size_t>(c)] <= rhs + 1e-9);
            l1 += lhs[static_cast<std::size_t>(c)];
        }
        l1 *= std::ldexp(1.0, -depth);

        double fstar2 = 0.0, gstar2 = 0.0;
        for (std::size_t c = 0; c < fstar.size(); ++c) {
            fstar2 += fstar[c] * fstar[c];
            gstar2 += gstar[c] * gstar[c];
        }
        fstar2 = std::sqrt(fstar2 * std::ldexp(1.0, -depth));
        gstar2 = std::sqrt(gstar2 * std::ldexp(1.0, -depth));
        CHECK(l1 <= fstar2 * gstar2 + f0.l2_norm() * g0.l2_norm() + 1e-9);
    }
}

TEST_CASE("square function") {
    // phi = h_T: square function is identically 1 with unit L1 mass.
    MatrixSymbol phi(1, 2);
    Mat one(1, 1);
    one(0, 0) = 1.0;
    phi.set_coeff(0, 0, one);
    const auto sf = square_function(phi);
    for (double v : sf.cells) CHECK(v == doctest::Approx(1.0));
    CHECK(sf.l1 == doctest::Approx(1.0));

    MatrixSymbol constant(1, 2);
    constant.set_dc(one);
    const auto sc = square_function(constant);
    for (double v : sc.cells) CHECK(v == doctest::Approx(0.0));
    CHECK(sc.l1 == doctest::Approx(0.0));

    MatrixSymbol matrix_sym(2, 2);
    CHECK_THROWS_AS(square_function(matrix_sym), std::invalid_argument);
}
