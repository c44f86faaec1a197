#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "opbmo/dyadic.hpp"
#include "opbmo/linalg.hpp"
#include "opbmo/symbol.hpp"

using namespace opbmo;

namespace {
Mat scalar1x1(Complex v) {
    Mat m(1, 1);
    m(0, 0) = v;
    return m;
}
}  // namespace

TEST_CASE("dyadic index algebra") {
    const DyadicIndex root = whole_circle();
    CHECK(root.measure() == 1.0);
    CHECK_FALSE(root.has_parent());
    CHECK(root.left_child() == DyadicIndex{1, 0});
    CHECK(root.right_child() == DyadicIndex{1, 1});

    const DyadicIndex idx{3, 5};
    CHECK(idx.measure() == doctest::Approx(0.125));
    CHECK(idx.parent() == DyadicIndex{2, 2});
    CHECK(idx.parent().contains(idx));
    CHECK_FALSE(idx.contains(idx.parent()));
    CHECK(idx.contains(idx));
    CHECK(root.contains(idx));

    auto [first, last] = cell_range(idx, 5);
    CHECK(last - first == 4);  // 2^(5-3) cells under a level-3 interval

    CHECK(interval_linear_index({0, 0}) == 0);
    CHECK(interval_linear_index({1, 1}) == 2);
    CHECK(interval_from_linear_index(2) == DyadicIndex{1, 1});
    for (std::int64_t li = 0; li < interval_count(4); ++li)
        CHECK(interval_linear_index(interval_from_linear_index(li)) == li);

    CHECK_THROWS_AS(DyadicIndex(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(DyadicIndex(-1, 0), std::invalid_argument);
}

TEST_CASE("haar sign convention: +1 on the left half") {
    // h_T at depth 1: +1 on cell 0, -1 on cell 1.
    CHECK(haar_value(whole_circle(), 0, 1) == doctest::Approx(1.0));
    CHECK(haar_value(whole_circle(), 1, 1) == doctest::Approx(-1.0));
    // Level-1 amplitude is sqrt(2).
    CHECK(haar_value({1, 0}, 0, 2) == doctest::Approx(std::sqrt(2.0)));
    CHECK(haar_value({1, 0}, 1, 2) == doctest::Approx(-std::sqrt(2.0)));
    CHECK(haar_value({1, 0}, 2, 2) == doctest::Approx(0.0));
}

TEST_CASE("haar analysis: constant symbol has zero coefficients") {
    Mat a(2, 2);
    a << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-2, 0.5);
    std::vector<Mat> cells(8, a);
    const MatrixSymbol b = MatrixSymbol::from_cells(cells);
    CHECK((b.dc() - a).norm() == doctest::Approx(0.0));
    for (int level = 0; level < 3; ++level)
        for (std::int64_t p = 0; p < (1 << level); ++p)
            CHECK(b.coeff(level, p).norm() == doctest::Approx(0.0));
}

TEST_CASE("haar analysis: single coefficient h_T A") {
    Mat a(2, 2);
    a << 2.0, 0.0, 0.0, 1.0;
    const std::vector<Mat> cells{a, -a};
    const MatrixSymbol b = MatrixSymbol::from_cells(cells);
    CHECK(b.dc().norm() == doctest::Approx(0.0));
    CHECK((b.coeff(0, 0) - a).norm() == doctest::Approx(0.0));
}

TEST_CASE("haar synthesis inverts analysis on random cells") {
    Rng rng(7);
    std::vector<Mat> cells;
    for (int c = 0; c < 8; ++c) cells.push_back(random_gaussian_matrix(2, 2, rng));
    const MatrixSymbol b = MatrixSymbol::from_cells(cells);
    const auto round = b.cells();
    for (int c = 0; c < 8; ++c)
        CHECK(rel_diff(round[static_cast<std::size_t>(c)], cells[static_cast<std::size_t>(c)]) <=
              1e-12);
}

TEST_CASE("synthesis examples") {
    MatrixSymbol b(2, 1);
    Mat a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    b.set_dc(a);
    auto cells = b.cells();
    CHECK((cells[0] - a).norm() == doctest::Approx(0.0));
    CHECK((cells[1] - a).norm() == doctest::Approx(0.0));

    MatrixSymbol h(2, 1);
    h.set_coeff(0, 0, a);
    cells = h.cells();
    CHECK((cells[0] - a).norm() == doctest::Approx(0.0));
    CHECK((cells[1] + a).norm() == doctest::Approx(0.0));
}

TEST_CASE("parseval for random symbols") {
    Rng rng(21);
    const MatrixSymbol b = random_symbol(3, 4, rng);
    const auto cells = b.cells();
    double cell_sq = 0.0;
    for (const Mat& c : cells) cell_sq += c.squaredNorm();
    cell_sq *= std::ldexp(1.0, -4);
    const double coeff_sq = b.frobenius_l2() * b.frobenius_l2();
    CHECK(std::abs(cell_sq - coeff_sq) / cell_sq <= 1e-12);
}

TEST_CASE("non-power-of-two cell counts are rejected") {
    std::vector<Mat> cells(3, Mat::Zero(2, 2));
    CHECK_THROWS_AS(MatrixSymbol::from_cells(cells), std::invalid_argument);
    CHECK_THROWS_AS(MatrixSymbol(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(MatrixSymbol(2, 0), std::invalid_argument);
}

TEST_CASE("moments: averages, coefficients, projections") {
    // B = h_{[0,1/2)} A: zero mean on [0,1/2), coefficient A there.
    Mat a(2, 2);
    a << 2.0, 0.0, 0.0, 1.0;
    MatrixSymbol b(2, 2);
    b.set_coeff(1, 0, a);

    const Moments m = moments(b, {1, 0});
    CHECK(m.mean.norm() == doctest::Approx(0.0));
    CHECK((m.coeff - a).norm() == doctest::Approx(0.0));

    // P_I B = (B - m_I B) chi_I on cells, for every I of a random symbol.
    Rng rng(3);
    const MatrixSymbol r = random_symbol(2, 3, rng);
    const auto cells = r.cells();
    for (int level = 0; level <= 3; ++level) {
        for (std::int64_t p = 0; p < (1 << level); ++p) {
            const Moments mm = moments(r, {level, p});
            const auto proj = mm.projection.cells();
            auto [first, last] = cell_range({level, p}, 3);
            for (std::int64_t c = 0; c < r.cell_count(); ++c) {
                const Mat expected = (c >= first && c < last)
                                         ? Mat(cells[static_cast<std::size_t>(c)] - mm.mean)
                                         : Mat(Mat::Zero(2, 2));
                CHECK(rel_diff(proj[static_cast<std::size_t>(c)], expected) <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(moments(r, DyadicIndex{4, 0}), std::invalid_argument);
}

TEST_CASE("rademacher-patterned scalar has zero mean") {
    MatrixSymbol phi(1, 3);
    for (std::int64_t p = 0; p < 2; ++p)
        phi.set_coeff(1, p, scalar1x1(std::sqrt(0.5)));
    const Moments m = moments(phi, whole_circle());
    CHECK(std::abs(m.mean(0, 0)) <= 1e-15);
}

TEST_CASE("expectation: truncation and averaging") {
    Rng rng(5);
    const MatrixSymbol b = random_symbol(2, 4, rng);
    CHECK(rel_diff(expectation(b, 0).cells()[0], b.dc()) <= 1e-12);
    CHECK((expectation(b, 4) - b).frobenius_l2() == doctest::Approx(0.0));

    // E_2 equals block averaging over level-2 cells.
    const MatrixSymbol e2 = expectation(b, 2);
    const auto cells = b.cells();
    const auto e2_cells = e2.cells();
    for (std::int64_t p = 0; p < 4; ++p) {
        Mat mean = Mat::Zero(2, 2);
        for (std::int64_t c = 4 * p; c < 4 * (p + 1); ++c)
            mean += cells[static_cast<std::size_t>(c)];
        mean /= 4.0;
        for (std::int64_t c = 4 * p; c < 4 * (p + 1); ++c)
            CHECK(rel_diff(e2_cells[static_cast<std::size_t>(c)], mean) <= 1e-12);
    }

    // L2 contraction and composition law.
    CHECK(e2.frobenius_l2() <= b.frobenius_l2() + 1e-12);
    const MatrixSymbol e32 = expectation(expectation(b, 3), 2);
    CHECK((e32 - expectation(b, 2)).frobenius_l2() == doctest::Approx(0.0));
    CHECK_THROWS_AS(expectation(b, 5), std::invalid_argument);
}

TEST_CASE("adjoint is an involution and acts coefficientwise") {
    Rng rng(9);
    const MatrixSymbol b = random_symbol(3, 3, rng);
    CHECK((b.adjoint().adjoint() - b).frobenius_l2() == doctest::Approx(0.0));
    CHECK((b.adjoint().coeff(2, 5) - b.coeff(2, 5).adjoint()).norm() ==
          doctest::Approx(0.0));

    MatrixSymbol herm(2, 2);
    Mat h(2, 2);
    h << 1.0, Complex(0, 1), Complex(0, -1), 2.0;
    herm.set_dc(h);
    herm.set_coeff(1, 1, h);
    CHECK((herm.adjoint() - herm).frobenius_l2() == doctest::Approx(0.0));
}

TEST_CASE("martingale transform: involution and identity pattern") {
    Rng rng(11);
    const MatrixSymbol b = random_symbol(2, 3, rng);
    const SignPattern all_plus(3);
    CHECK((martingale_transform(b, all_plus) - b).frobenius_l2() == doctest::Approx(0.0));

    Rng rs(13);
    const SignPattern sigma = SignPattern::random(3, rs);
    CHECK(sigma.size() == interval_count(3));
    CHECK((martingale_transform(martingale_transform(b, sigma), sigma) - b).frobenius_l2() ==
          doctest::Approx(0.0));

    const SignPattern wrong(2);
    CHECK_THROWS_AS(martingale_transform(b, wrong), std::invalid_argument);
}

TEST_CASE("pointwise apply") {
    Rng rng(15);
    MatrixSymbol ident(2, 2);
    ident.set_dc(Mat::Identity(2, 2));
    const VectorField f = random_field(2, 2, rng);
    const VectorField out = pointwise_apply(ident, f);
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        CHECK((out.value(c) - f.value(c)).norm() == doctest::Approx(0.0));

    // <B f, g> computed on cells equals the coefficient-expansion value.
    const MatrixSymbol b = random_symbol(2, 3, rng);
    const VectorField f3 = random_field(2, 3, rng);
    const VectorField g3 = random_field(2, 3, rng);
    const VectorField bf = pointwise_apply(b, f3);
    const Complex direct = l2_inner(bf, g3);
    const FieldCoeffs bfc = analyze_field(bf);
    const FieldCoeffs gc = analyze_field(g3);
    Complex viacoeff = gc.mean.dot(bfc.mean);
    for (int level = 0; level < 3; ++level)
        for (std::int64_t p = 0; p < (1 << level); ++p)
            viacoeff += gc.at(level, p).dot(bfc.at(level, p));
    CHECK(std::abs(direct - viacoeff) <= 1e-12 * std::max(1.0, std::abs(direct)));

    MatrixSymbol wrong(3, 3);
    CHECK_THROWS_AS(pointwise_apply(wrong, f3), std::invalid_argument);
}

TEST_CASE("rademacher builder") {
    // N=1, B_1 = Id: cells alternate +-Id on level-2 cells.
    const MatrixSymbol r1 = build_rademacher({Mat::Identity(2, 2)}, 2);
    const auto cells = r1.cells();
    CHECK((cells[0] - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));
    CHECK((cells[1] + Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));
    CHECK((cells[2] - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));
    CHECK((cells[3] + Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));
    CHECK(r1.dc().norm() == doctest::Approx(0.0));

    CHECK_THROWS_AS(build_rademacher({Mat::Identity(2, 2)}, 1), std::invalid_argument);
}

TEST_CASE("op_norm basics and oracles") {
    Mat d(2, 2);
    d << 2.0, 0.0, 0.0, 1.0;
    CHECK(op_norm(d) == doctest::Approx(2.0));
    CHECK(op_norm(Mat::Zero(3, 3)) == doctest::Approx(0.0));

    Rng rng(17);
    const Mat m = random_gaussian_matrix(20, 20, rng);
    const double svd = op_norm_svd(m);
    const auto power = op_norm_power(m);
    CHECK(std::abs(power.value - svd) / svd <= 1e-9);

    // Unitary invariance.
    const Mat u = random_unitary(20, rng);
    const Mat v = random_unitary(20, rng);
    CHECK(std::abs(op_norm_svd(u * m * v) - svd) / svd <= 1e-9);

    Mat bad(2, 2);
    bad << 1.0, std::numeric_limits<double>::infinity(), 0.0, 0.0;
    CHECK_THROWS_AS(op_norm(bad), std::invalid_argument);
}

TEST_CASE("psd_sqrt") {
    CHECK((psd_sqrt(Mat::Identity(3, 3)) - Mat::Identity(3, 3)).norm() ==
          doctest::Approx(0.0));

    Mat d(2, 2);
    d << 4.0, 0.0, 0.0, 9.0;
    Mat expect(2, 2);
    expect << 2.0, 0.0, 0.0, 3.0;
    CHECK((psd_sqrt(d) - expect).norm() <= 1e-12);

    Rng rng(19);
    const Mat x = random_gaussian_matrix(4, 4, rng);
    const Mat m = x.adjoint() * x;
    const Mat r = psd_sqrt(m);
    CHECK(rel_diff(r * r, m) <= 1e-9);
    CHECK(is_hermitian(r));

    Mat nonherm(2, 2);
    nonherm << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(psd_sqrt(nonherm), std::invalid_argument);
    Mat negative(2, 2);
    negative << -1.0, 0.0, 0.0, 1.0;
    CHECK_THROWS_AS(psd_sqrt(negative), std::invalid_argument);
}

TEST_CASE("deterministic rng streams") {
    Rng a = Rng::stream(42, 1, 2, 3);
    Rng b = Rng::stream(42, 1, 2, 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c = Rng::stream(42, 1, 2, 4);
    bool differs = false;
    Rng a2 = Rng::stream(42, 1, 2, 3);
    for (int i = 0; i < 10; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);
}
