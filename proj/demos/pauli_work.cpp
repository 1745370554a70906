// Work extractable from a singlet while the memory qubit sits in a Pauli
// channel with an oscillating dephasing rate. Prints t, W_ex, and whether
// the dynamics is CP-divisible at that instant.

#include <cstdio>

#include "nmwork/nmwork.hpp"

int main() {
    using namespace nmwork;
    const auto rates = PauliRateSet::tan_scenario(0.1, 2.0);
    const TwoQubit psi = singlet();
    std::printf("%6s %10s %s\n", "t", "W_ex", "cp");
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.25 * i;
        try {
            const auto kraus = pauli_kraus(pauli_snapshot(rates, t));
            const auto rho = apply_to_subsystem(kraus, psi, Party::memory);
            const auto flags = divisibility_flags(rates, t);
            std::printf("%6.2f %10.6f %d\n", t, work_memory_scenario(rho), flags.cp_divisible ? 1 : 0);
        } catch (const SingularityError&) {
            std::printf("%6.2f %10s\n", t, "singular");
        }
    }
}
