// Compares the serial reference assembly against the OpenMP path on the
// heaviest production configuration and checks that the outputs agree.

#include <chrono>
#include <iostream>

#include "drh/hierarchy.hpp"

using namespace drh;

namespace {

double run(const char* name, int alpha, int beta, const TruncationContext& ctx,
           const FamilySpec& spec, const Oracle& oracle, ExecPolicy policy, DiffPoly* out) {
    auto t0 = std::chrono::steady_clock::now();
    DiffPoly P = policy == ExecPolicy::Serial
                     ? assemble_P_serial(alpha, beta, 0, spec, ctx, oracle)
                     : assemble_P(alpha, beta, 0, spec, ctx, oracle, ExecPolicy::Parallel);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cout << name << ": " << ms << " ms, " << P.size() << " terms\n";
    if (out) *out = P;
    return ms;
}

}  // namespace

int main() {
    FamilySpec spec = FamilySpec::rank2_symbolic();
    Oracle oracle;
    int failures = 0;
    for (auto [alpha, beta, dmax, emax] :
         {std::tuple{1, 2, 6, 4}, std::tuple{1, 1, 8, 2}}) {
        TruncationContext ctx(2, dmax, emax);
        std::cout << "assemble P^" << alpha << "_{" << beta << ",0} at Dmax=" << dmax
                  << " Emax=" << emax << "\n";
        DiffPoly serial(ctx), parallel(ctx);
        double ts = run("  serial  ", alpha, beta, ctx, spec, oracle, ExecPolicy::Serial, &serial);
        double tp = run("  parallel", alpha, beta, ctx, spec, oracle, ExecPolicy::Parallel, &parallel);
        std::cout << "  speedup : " << (tp > 0 ? ts / tp : 0.0) << "x\n";
        if (serial != parallel) {
            std::cout << "  MISMATCH between serial and parallel results\n";
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
