// Times the OpenMP kernels against their serial references on the two hot
// paths: transmitter-set enumeration and exact rational rank. Results must
// agree exactly; the table reports wall time for both lanes.

#include <cstdio>
#include <memory>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sheafnet/activation.hpp"
#include "sheafnet/netmodel.hpp"
#include "sheafnet/sheaflin.hpp"

using namespace sheafnet;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

void print_row(const char* name, double serial_s, double parallel_s,
               bool equal) {
  std::printf("%-34s %10.4fs %10.4fs %8.2fx  %s\n", name, serial_s, parallel_s,
              serial_s / parallel_s, equal ? "match" : "MISMATCH");
}

NetworkDescription sparse_network(int nodes, std::uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 8.0);
  std::map<NodeId, std::array<double, 2>> positions;
  std::map<NodeId, double> radii;
  for (int n = 1; n <= nodes; ++n) {
    positions[n] = {coord(rng), coord(rng)};
    radii[n] = radius;
  }
  return disk_signals(positions, radii);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-34s %11s %11s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    auto X = std::make_shared<SimplicialComplex>(
        link_complex(sparse_network(17, 7, 2.2)));
    const SetSheaf sheaf = activation_sheaf(X);
    double t0 = now();
    const auto serial = enumerate_global_sections_serial(sheaf);
    double t1 = now();
    const auto parallel = enumerate_global_sections(sheaf, Exec::parallel);
    double t2 = now();
    print_row("section enumeration (17 nodes)", t1 - t0, t2 - t1,
              serial == parallel);
  }

  {
    auto X = std::make_shared<SimplicialComplex>(
        link_complex(sparse_network(13, 3, 3.1)));
    const VectorSheaf sheaf = vector_activation_sheaf(X);
    const RatMatrix delta = coboundary(sheaf, 1);
    std::printf("rank input: %d x %d\n", delta.rows(), delta.cols());
    double t0 = now();
    const int serial = rank_reference(delta);
    double t1 = now();
    const int parallel = rank(delta, Exec::parallel);
    double t2 = now();
    print_row("rational rank (coboundary)", t1 - t0, t2 - t1,
              serial == parallel);
  }

  {
    // Dense-ish random rational matrix, single nonzero block.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-3, 3);
    RatMatrix m(140, 170);
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) = entry(rng);
    }
    double t0 = now();
    const int serial = rank_reference(m);
    double t1 = now();
    const int parallel = rank(m, Exec::parallel);
    double t2 = now();
    print_row("rational rank (dense random)", t1 - t0, t2 - t1,
              serial == parallel);
  }
  return 0;
}
