#include "opbmo/operators.hpp"

#include <omp.h>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "opbmo/linalg.hpp"
#include "opbmo/reference.hpp"

namespace opbmo {

namespace {

void check_shapes(const MatrixSymbol& b, const VectorField& f) {
    if (b.dim() != f.dim() || b.depth() != f.depth())
        throw std::invalid_argument("operator apply: shape mismatch");
}

// pi_B f = sum_I B_I (m_I f) h_I: one averaging pass, then per-interval products.
VectorField kernel_para(const MatrixSymbol& b, const VectorField& f) {
    const int depth = f.depth();
    const auto avg = field_averages(f);
    FieldCoeffs out;
    out.dim = f.dim();
    out.depth = depth;
    out.mean = Vec::Zero(f.dim());
    out.coeffs.resize(static_cast<std::size_t>(depth));
    for (int level = 0; level < depth; ++level) {
        auto& row = out.coeffs[static_cast<std::size_t>(level)];
        const auto& means = avg[static_cast<std::size_t>(level)];
        const std::int64_t count = std::int64_t{1} << level;
        row.resize(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (count >= 256)
        for (std::int64_t p = 0; p < count; ++p)
            row[static_cast<std::size_t>(p)] =
                b.coeff(level, p) * means[static_cast<std::size_t>(p)];
    }
    return synthesize_field(out);
}

// Delta_B f = sum_I B_I (f_I) chi_I/|I|: analyze once, accumulate down the tree.
VectorField kernel_delta(const MatrixSymbol& b, const VectorField& f) {
    const int depth = f.depth();
    const auto fc = analyze_field(f);
    std::vector<Vec> cur{Vec::Zero(f.dim())};
    for (int level = 0; level < depth; ++level) {
        const double inv_measure = std::ldexp(1.0, level);
        const std::int64_t count = std::int64_t{1} << level;
        std::vector<Vec> next(static_cast<std::size_t>(2 * count));
#pragma omp parallel for schedule(static) if (count >= 256)
        for (std::int64_t p = 0; p < count; ++p) {
            const Vec term = cur[static_cast<std::size_t>(p)] +
                             inv_measure * (b.coeff(level, p) * fc.at(level, p));
            next[static_cast<std::size_t>(2 * p)] = term;
            next[static_cast<std::size_t>(2 * p + 1)] = term;
        }
        cur.swap(next);
    }
    VectorField out(f.dim(), depth);
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        out.value(c) = cur[static_cast<std::size_t>(c)];
    return out;
}

VectorField add_fields(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (std::int64_t c = 0; c < a.cell_count(); ++c) out.value(c) += b.value(c);
    return out;
}

// Lambda_B reads only Haar coefficients of f, so apply to the zero-mean part.
VectorField kernel_mult(const MatrixSymbol& b, const VectorField& f) {
    const VectorField f0 = zero_mean_part(f);
    return add_fields(kernel_para(b, f0), kernel_delta(b, f0));
}

// D_{U*,V}: subtree prefix sums P_I = sum_{J inside-or-equal I} U_J^* V_J,
// block at I is (P_I - U_I^* V_I)/|I|.
VectorField kernel_diag(const MatrixSymbol& u, const MatrixSymbol& v,
                        const VectorField& f) {
    const int depth = f.depth();
    const int dim = f.dim();
    const auto fc = analyze_field(f);

    std::vector<std::vector<Mat>> prefix(static_cast<std::size_t>(depth));
    for (int level = depth - 1; level >= 0; --level) {
        const std::int64_t count = std::int64_t{1} << level;
        auto& row = prefix[static_cast<std::size_t>(level)];
        row.resize(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (count >= 64)
        for (std::int64_t p = 0; p < count; ++p) {
            Mat sum = u.coeff(level, p).adjoint() * v.coeff(level, p);
            if (level + 1 < depth) {
                sum += prefix[static_cast<std::size_t>(level + 1)][static_cast<std::size_t>(2 * p)];
                sum += prefix[static_cast<std::size_t>(level + 1)][static_cast<std::size_t>(2 * p + 1)];
            }
            row[static_cast<std::size_t>(p)] = sum;
        }
    }

    FieldCoeffs out;
    out.dim = dim;
    out.depth = depth;
    out.mean = Vec::Zero(dim);
    out.coeffs.resize(static_cast<std::size_t>(depth));
    for (int level = 0; level < depth; ++level) {
        const double inv_measure = std::ldexp(1.0, level);
        const std::int64_t count = std::int64_t{1} << level;
        auto& row = out.coeffs[static_cast<std::size_t>(level)];
        row.resize(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (count >= 64)
        for (std::int64_t p = 0; p < count; ++p) {
            const Mat strict = prefix[static_cast<std::size_t>(level)][static_cast<std::size_t>(p)] -
                               u.coeff(level, p).adjoint() * v.coeff(level, p);
            row[static_cast<std::size_t>(p)] = inv_measure * (strict * fc.at(level, p));
        }
    }
    return synthesize_field(out);
}

VectorField basis_field(int dim, int depth, Subspace s, std::int64_t index) {
    Vec v = Vec::Zero(basis_dim(dim, depth, s));
    v(index) = 1.0;
    return from_basis(v, dim, depth, s);
}

Mat assemble_columns(int dim, int depth, Subspace domain, Subspace codomain,
                     const std::function<VectorField(const VectorField&)>& apply) {
    const std::int64_t cols = basis_dim(dim, depth, domain);
    const std::int64_t rows = basis_dim(dim, depth, codomain);
    Mat m(rows, cols);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < cols; ++j)
        m.col(j) = to_basis(apply(basis_field(dim, depth, domain, j)), codomain);
    return m;
}

void check_dense_limit(const MatrixSymbol& b) {
    if (static_cast<std::int64_t>(b.dim()) * b.cell_count() > kDenseAssemblyLimit)
        throw std::invalid_argument(
            "dense assembly limit exceeded; use the matrix-free path");
}

}  // namespace

std::int64_t basis_dim(int dim, int depth, Subspace s) {
    const std::int64_t cells = std::int64_t{1} << depth;
    return s == Subspace::full ? dim * cells : dim * (cells - 1);
}

Vec to_basis(const VectorField& f, Subspace s) {
    const FieldCoeffs fc = analyze_field(f);
    const int dim = f.dim();
    Vec out = Vec::Zero(basis_dim(dim, f.depth(), s));
    std::int64_t offset = 0;
    if (s == Subspace::full) {
        out.segment(0, dim) = fc.mean;
        offset = dim;
    }
    for (int level = 0; level < f.depth(); ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p)
            out.segment(offset + dim * interval_linear_index({level, p}), dim) =
                fc.at(level, p);
    return out;
}

VectorField from_basis(const Vec& v, int dim, int depth, Subspace s) {
    if (v.size() != basis_dim(dim, depth, s))
        throw std::invalid_argument("basis vector dimension mismatch");
    FieldCoeffs fc;
    fc.dim = dim;
    fc.depth = depth;
    fc.mean = Vec::Zero(dim);
    std::int64_t offset = 0;
    if (s == Subspace::full) {
        fc.mean = v.segment(0, dim);
        offset = dim;
    }
    fc.coeffs.resize(static_cast<std::size_t>(depth));
    for (int level = 0; level < depth; ++level) {
        auto& row = fc.coeffs[static_cast<std::size_t>(level)];
        row.resize(std::size_t{1} << level);
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p)
            row[static_cast<std::size_t>(p)] =
                v.segment(offset + dim * interval_linear_index({level, p}), dim);
    }
    return synthesize_field(fc);
}

VectorField AssembledOperator::apply(const VectorField& f) const {
    if (f.dim() != dim || f.depth() != depth)
        throw std::invalid_argument("assembled apply: shape mismatch");
    return from_basis(matrix * to_basis(f, domain), dim, depth, codomain);
}

double AssembledOperator::norm() const { return op_norm(matrix); }

AssembledOperator assemble_para(const MatrixSymbol& b) {
    check_dense_limit(b);
    AssembledOperator op;
    op.dim = b.dim();
    op.depth = b.depth();
    op.domain = op.codomain = Subspace::full;
    op.provenance = "para";
    op.matrix = assemble_columns(b.dim(), b.depth(), op.domain, op.codomain,
                                 [&](const VectorField& f) { return reference::apply_para(b, f); });
    return op;
}

AssembledOperator assemble_delta(const MatrixSymbol& b) {
    check_dense_limit(b);
    AssembledOperator op;
    op.dim = b.dim();
    op.depth = b.depth();
    op.domain = op.codomain = Subspace::full;
    op.provenance = "delta";
    op.matrix = assemble_columns(b.dim(), b.depth(), op.domain, op.codomain,
                                 [&](const VectorField& f) { return reference::apply_delta(b, f); });
    return op;
}

AssembledOperator assemble_mult(const MatrixSymbol& b) {
    check_dense_limit(b);
    AssembledOperator op;
    op.dim = b.dim();
    op.depth = b.depth();
    op.domain = Subspace::zero_mean;
    op.codomain = Subspace::full;
    op.provenance = "mult";
    op.matrix = assemble_columns(b.dim(), b.depth(), op.domain, op.codomain,
                                 [&](const VectorField& f) { return reference::apply_mult(b, f); });

    // Independent build: pi_B + Delta_B restricted to zero-mean inputs.
    Mat alt = assemble_columns(
        b.dim(), b.depth(), Subspace::zero_mean, Subspace::full,
        [&](const VectorField& f) {
            return add_fields(reference::apply_para(b, f), reference::apply_delta(b, f));
        });
    const double diff = rel_diff(op.matrix, alt);
    if (diff > 1e-11)
        throw std::runtime_error("assemble_mult: definitional and pi+Delta builds disagree");
    return op;
}

AssembledOperator assemble_diag(const MatrixSymbol& u, const MatrixSymbol& v) {
    if (u.dim() != v.dim() || u.depth() != v.depth())
        throw std::invalid_argument("assemble_diag: symbol shape mismatch");
    check_dense_limit(u);
    AssembledOperator op;
    op.dim = u.dim();
    op.depth = u.depth();
    op.domain = op.codomain = Subspace::zero_mean;
    op.provenance = "diag";
    op.matrix = assemble_columns(u.dim(), u.depth(), op.domain, op.codomain,
                                 [&](const VectorField& f) { return reference::apply_diag(u, v, f); });
    return op;
}

VectorField apply_matrix_free(OperatorKind kind, const MatrixSymbol& b,
                              const VectorField& f) {
    check_shapes(b, f);
    switch (kind) {
        case OperatorKind::para: return kernel_para(b, f);
        case OperatorKind::delta: return kernel_delta(b, f);
        case OperatorKind::mult: return kernel_mult(b, f);
        case OperatorKind::diag:
            throw std::invalid_argument("diag needs two symbols; use apply_matrix_free_diag");
    }
    throw std::invalid_argument("unknown operator kind");
}

VectorField apply_matrix_free_diag(const MatrixSymbol& u, const MatrixSymbol& v,
                                   const VectorField& f) {
    if (u.dim() != v.dim() || u.depth() != v.depth())
        throw std::invalid_argument("apply_diag: symbol shape mismatch");
    check_shapes(u, f);
    return kernel_diag(u, v, f);
}

PowerIterationResult operator_norm_matrix_free(OperatorKind kind, const MatrixSymbol& b,
                                               int max_iterations, double tol) {
    const int dim = b.dim();
    const int depth = b.depth();
    const MatrixSymbol badj = b.adjoint();

    Subspace domain = Subspace::full;
    std::function<VectorField(const VectorField&)> forward, adjoint;
    switch (kind) {
        case OperatorKind::para:
            forward = [&](const VectorField& f) { return kernel_para(b, f); };
            adjoint = [&](const VectorField& f) { return kernel_delta(badj, f); };
            break;
        case OperatorKind::delta:
            forward = [&](const VectorField& f) { return kernel_delta(b, f); };
            adjoint = [&](const VectorField& f) { return kernel_para(badj, f); };
            break;
        case OperatorKind::mult:
            domain = Subspace::zero_mean;
            forward = [&](const VectorField& f) { return kernel_mult(b, f); };
            // (Lambda_B ∘ Q)^* = Q ∘ (Delta_{B*} + pi_{B*}); the zero-mean
            // basis conversion below performs the final projection.
            adjoint = [&](const VectorField& f) {
                return add_fields(kernel_delta(badj, f), kernel_para(badj, f));
            };
            break;
        case OperatorKind::diag:
            throw std::invalid_argument("diag norm: assemble or use the block formula");
    }

    PowerIterationResult res;
    Vec v(basis_dim(dim, depth, domain));
    Rng start = Rng::stream(0x7157a13eULL, static_cast<std::uint64_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = start.next_cgaussian();
    v.normalize();

    double lambda = 0.0, prev = -1.0;
    auto round_trip = [&](const Vec& x) {
        const VectorField fwd = forward(from_basis(x, dim, depth, domain));
        return to_basis(adjoint(fwd), domain);
    };
    for (int it = 0; it < max_iterations; ++it) {
        Vec u = round_trip(v);
        lambda = u.norm();
        res.iterations = it + 1;
        if (lambda == 0.0) { res.converged = true; return res; }
        v = u / lambda;
        if (prev >= 0.0 && std::abs(lambda - prev) <= tol * lambda) {
            res.converged = true;
            break;
        }
        prev = lambda;
    }
    Vec u = round_trip(v);
    const double rq = std::real(v.dot(u));
    res.value = std::sqrt(std::max(rq, 0.0));
    res.residual = (u - rq * v).norm() / std::max(rq, 1e-300);
    return res;
}

}  // namespace opbmo
