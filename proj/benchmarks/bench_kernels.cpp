// Timing harness: serial reference kernels vs the OpenMP tree kernels, and
// dense assembly + matrix application vs matrix-free application.
//
// Reported, not asserted. Matrix-free application overtakes the dense path
// (assembly included) around K >= 8 for small n; the tree kernels overtake
// the literal per-interval reference as the cell count grows.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "opbmo/operators.hpp"
#include "opbmo/reference.hpp"
#include "opbmo/sweep.hpp"

using namespace opbmo;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
    fn();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%4s %4s | %12s %12s | %12s %12s | %12s %12s\n", "n", "K",
                "ref_apply", "kern_apply", "assemble", "dense_apply", "ref_sweep",
                "kern_sweep");
    std::printf("all times in ms; dense columns blank above the assembly limit\n");

    for (int dim : {2, 4, 8}) {
        for (int depth : {4, 6, 8, 10, 12}) {
            Rng rng = Rng::stream(1, dim, depth);
            const MatrixSymbol b = random_symbol(dim, depth, rng);
            const VectorField f = random_field(dim, depth, rng);

            const int repeats = depth <= 8 ? 20 : 5;
            const double t_ref = time_ms([&] { reference::apply_para(b, f); }, repeats);
            const double t_kernel =
                time_ms([&] { apply_matrix_free(OperatorKind::para, b, f); }, repeats);
            const double t_ref_sweep = time_ms([&] { reference::sweep(b); }, repeats);
            const double t_sweep = time_ms([&] { sweep(b); }, repeats);

            char assemble_col[16] = "-", dense_col[16] = "-";
            if (static_cast<std::int64_t>(dim) * (std::int64_t{1} << depth) <=
                kDenseAssemblyLimit) {
                const AssembledOperator op = assemble_para(b);
                std::snprintf(assemble_col, sizeof assemble_col, "%.3f",
                              time_ms([&] { assemble_para(b); }, depth <= 6 ? 5 : 1));
                std::snprintf(dense_col, sizeof dense_col, "%.3f",
                              time_ms([&] { op.apply(f); }, repeats));
            }

            std::printf("%4d %4d | %12.3f %12.3f | %12s %12s | %12.3f %12.3f\n", dim,
                        depth, t_ref, t_kernel, assemble_col, dense_col, t_ref_sweep,
                        t_sweep);
        }
    }
    return 0;
}
