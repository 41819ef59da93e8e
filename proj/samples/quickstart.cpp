// Small tour: a scalar check, a commuting trace check, a Loewner residual.

#include "logsum/logsum.hpp"

#include <iostream>

int main() {
    using namespace logsum;

    const SequencePair pair({1.0, 2.0, 3.0}, {2.0, 2.0, 1.0});
    const auto scalar = generalized_log_sum_gap(FunctionSpec::log(), FunctionSpec::identity(), pair);
    std::cout << "scalar log-sum: lhs " << scalar.lhs << " rhs " << scalar.rhs << " holds " << scalar.holds << "\n";

    harness::Rng rng(7);
    const auto pr = harness::random_commuting_pair(rng, 3);
    const auto trace = trace_log_sum_gap(FunctionSpec::log(), FunctionSpec::identity(), pr.A, pr.B);
    std::cout << "trace form: gap " << trace.verdict.gap << " paths agree " << trace.paths_agree() << "\n";

    const auto fam = harness::random_expansive_families(rng, 2, 3);
    const auto res = perspective_sum_residual(OperatorFunctionSpec::power(0.5), fam.A, fam.B);
    std::cout << "perspective sum: residual min eigenvalue " << res.verdict.residual_min_eigenvalue << " holds "
              << res.verdict.holds << "\n";
    return 0;
}
