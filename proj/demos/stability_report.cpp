// Prints a human-readable stability report for an edge-list file: balance
// structure, what the negative edges alone reveal about the spectrum, and
// the spectrum itself. Pass a path, or run bare to analyze a bundled
// example network.

#include <cstdio>
#include <string>

#include "signednet/graph.hpp"
#include "signednet/io.hpp"
#include "signednet/laplacian.hpp"
#include "signednet/spectral.hpp"

using namespace signednet;

int main(int argc, char** argv) {
  std::string path =
      argc > 1 ? argv[1] : std::string(SIGNEDNET_DATA_DIR) + "/g0.edges";

  SignedGraph g;
  try {
    g = load_graph_file(path);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  std::printf("%s: %d nodes, %zu edges (%d negative), %s\n", path.c_str(), g.n(),
              g.edges().size(), g.count_negative_edges(),
              g.directed() ? "directed" : "undirected");

  BalanceResult bal = structural_balance(g);
  if (bal.balanced) {
    std::printf("structurally balanced; node signs:");
    for (int i = 0; i < g.n(); ++i)
      std::printf(" %s%s", bal.gauge[size_t(i)] > 0 ? "+" : "-", g.label(i).c_str());
    std::printf("\n");
  } else {
    std::printf("structurally imbalanced; odd cycle:");
    for (int i : bal.witness_cycle) std::printf(" %s", g.label(i).c_str());
    std::printf("\n");
  }

  if (!g.directed() && is_connected(g)) {
    InertiaPrediction cut = predict_inertia_from_cut(g);
    std::printf("negative-edge structure: %s (negative eigenvalues in [%d, %d])\n",
                cut.note.c_str(), cut.lower, cut.upper);
  }

  SpectralReport rep = spectral_report(laplacian(g));
  std::printf("spectrum:");
  for (const auto& z : rep.eigenvalues) {
    if (std::abs(z.imag()) > rep.eps_zero)
      std::printf(" %.4f%+.4fi", z.real(), z.imag());
    else
      std::printf(" %.4f", z.real());
  }
  std::printf("\n%d negative eigenvalue(s): the flow x' = -Lx is %s\n", rep.n_negative,
              rep.n_negative == 0 ? "stable" : "unstable");
  return 0;
}
