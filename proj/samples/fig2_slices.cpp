// Measures versus the Ising-Heisenberg coupling J at J2 = 1, Jm = 0, H = 0,
// for three temperatures. Prints a table suitable for plotting.

#include "diamond/correlations.hpp"
#include "diamond/sweep.hpp"

#include <cstdio>

int main() {
  for (double t : {0.1, 0.5, 1.0}) {
    std::printf("# T = %g\n# J concurrence qd gmqd gqd1\n", t);
    for (int i = 0; i <= 30; ++i) {
      const diamond::ChainParams p{-1.5 + 0.1 * i, 1.0, 0.0, 0.0, t};
      const auto r = diamond::full_report(p);
      std::printf("%s %s %s %s %s\n", diamond::format_real(p.j).c_str(), diamond::format_real(*r.concurrence).c_str(),
                  diamond::format_real(*r.quantum_discord).c_str(), diamond::format_real(*r.gmqd).c_str(),
                  diamond::format_real(*r.gqd_1norm).c_str());
    }
    std::printf("\n");
  }
}
