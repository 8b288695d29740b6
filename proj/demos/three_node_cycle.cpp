// Smallest interesting example: a directed three-node cycle with one
// antagonistic arc. Walks from the raw spectrum (one genuinely negative
// eigenvalue - the flow diverges) through the exact gain target to a
// compensated, stable flow, printing each step.

#include <cstdio>

#include "signednet/compensation.hpp"
#include "signednet/laplacian.hpp"
#include "signednet/spectral.hpp"

using namespace signednet;

namespace {

void print_spectrum(const char* label, const SpectralReport& rep) {
  std::printf("%s:", label);
  for (const auto& z : rep.eigenvalues) {
    if (std::abs(z.imag()) > rep.eps_zero)
      std::printf("  %.4f%+.4fi", z.real(), z.imag());
    else
      std::printf("  %.4f", z.real());
  }
  std::printf("   (%d negative, %d zero)\n", rep.n_negative, rep.n_zero);
}

}  // namespace

int main() {
  // Arcs: 1 listens to 3 with weight -1; 2 listens to 1; 3 listens to 2.
  SignedGraph g = SignedGraph::make(
      3, true, {{0, 2, -1.0}, {1, 0, 1.0}, {2, 1, 1.0}}, {"1", "2", "3"});

  std::printf("three-node directed cycle, one negative arc\n\n");
  print_spectrum("uncompensated spectrum", eig_general(laplacian(g)));

  Vec d = delta_vector(g);
  std::printf("exact gain target: (%g, %g, %g)\n\n", d[0], d[1], d[2]);

  for (double gain : {1.0, 1.9, 2.0, 2.5}) {
    CompensationVector k{Vec{gain, 0.0, 0.0}};
    BehaviorPrediction p = classify(g, k);
    char label[64];
    std::snprintf(label, sizeof label, "gain %.1f on node 1", gain);
    print_spectrum(label, eig_general(compensated_laplacian(g, k.k)));
    std::printf("  verdict: %s (%s)\n", regime_name(p.regime),
                p.spectrally_stable ? "spectrally stable" : "spectrally unstable");
  }
  return 0;
}
