#include "slabmix/flux_field.hpp"

#include <ostream>
#include <stdexcept>

#include "slabmix/csv.hpp"

namespace slabmix {

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::kBenchmarkRealization: return "benchmark-realization";
    case ModelTag::kBenchmarkEnsemble: return "benchmark-ensemble";
    case ModelTag::kAtomicMix: return "atomic-mix";
    case ModelTag::kLp: return "lp";
    case ModelTag::kAlp: return "alp";
    case ModelTag::kDiffusionAtomicMix: return "diffusion-am";
    case ModelTag::kDiffusionLp: return "diffusion-lp";
    case ModelTag::kDiffusionAlp: return "diffusion-alp";
  }
  return "unknown";
}

double flux_at_origin(const Mesh& mesh, const Eigen::ArrayXd& scalar_flux) {
  const int edge = mesh.origin_edge();
  if (edge == 0 || edge == static_cast<int>(mesh.edges.size()) - 1) {
    throw std::logic_error("flux_at_origin: origin edge has no interior neighbors");
  }
  return 0.5 * (scalar_flux[edge - 1] + scalar_flux[edge]);
}

double flux_at_origin(const FluxField& flux) {
  return flux_at_origin(flux.mesh, flux.scalar_flux);
}

void write_flux_csv(std::ostream& os, const FluxField& flux) {
  os << "x,scalar_flux_" << to_string(flux.tag) << "\n";
  const Eigen::ArrayXd centers = flux.mesh.centers();
  for (int i = 0; i < flux.mesh.n_cells(); ++i) {
    os << fmt17(centers[i]) << ',' << fmt17(flux.scalar_flux[i]) << "\n";
  }
}

}  // namespace slabmix
