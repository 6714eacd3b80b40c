#include "slabmix/transport.hpp"

#include <cmath>
#include <utility>

namespace slabmix {
namespace {

// Per-(direction, cell) diamond-difference coefficients for one marching
// orientation:  psi_out = r1 * psi_in + r2 * emission_cell.
struct HalfSweep {
  Eigen::ArrayXd mu_abs;  // |mu|, one entry per direction in this half
  Eigen::ArrayXd weight;
  Eigen::ArrayXXd r1;  // (directions, cells)
  Eigen::ArrayXXd r2;
};

HalfSweep make_half(const Mesh& mesh, const Eigen::ArrayXd& mu_abs,
                    const Eigen::ArrayXd& weight) {
  HalfSweep half;
  half.mu_abs = mu_abs;
  half.weight = weight;
  const int h = static_cast<int>(mu_abs.size());
  const int n = mesh.n_cells();
  const Eigen::ArrayXd widths = mesh.widths();
  half.r1.resize(h, n);
  half.r2.resize(h, n);
  for (int j = 0; j < n; ++j) {
    const double half_sigma = 0.5 * mesh.sigma_t[j];
    const Eigen::ArrayXd a = mu_abs / widths[j];
    half.r1.col(j) = (a - half_sigma) / (a + half_sigma);
    half.r2.col(j) = 0.5 / (a + half_sigma);
  }
  return half;
}

struct SweepWorkspace {
  HalfSweep neg;  // quadrature rows [0, h)
  HalfSweep pos;  // quadrature rows [h, 2h)
  int h = 0;
  // scratch, reused across iterations
  Eigen::ArrayXd in, out, center;

  SweepWorkspace(const Mesh& mesh, const Quadrature& quad) {
    const int n_dirs = quad.order();
    h = n_dirs / 2;
    const Eigen::ArrayXd mu = quad.mu.array();
    const Eigen::ArrayXd w = quad.w.array();
    neg = make_half(mesh, (-mu.head(h)).eval(), w.head(h).eval());
    pos = make_half(mesh, mu.tail(h).eval(), w.tail(h).eval());
    in.resize(h);
    out.resize(h);
    center.resize(h);
  }
};

struct SweepOutputs {
  Eigen::ArrayXd* scalar = nullptr;        // required
  Eigen::MatrixXd* angular = nullptr;      // optional (direction, cell)
  long* negative_count = nullptr;          // optional
  double outflow_left = 0.0;
  double outflow_right = 0.0;
};

// One full sweep: positive directions march left->right, negative ones
// right->left; vacuum inflow on both faces.
void run_sweep(SweepWorkspace& ws, const Mesh& mesh,
               const Eigen::ArrayXd& emission, SweepOutputs& outp) {
  const int n = mesh.n_cells();
  const int h = ws.h;
  Eigen::ArrayXd& in = ws.in;
  Eigen::ArrayXd& out = ws.out;
  Eigen::ArrayXd& center = ws.center;

  in.setZero();
  for (int j = 0; j < n; ++j) {
    out = ws.pos.r1.col(j) * in + ws.pos.r2.col(j) * emission[j];
    center = 0.5 * (in + out);
    (*outp.scalar)[j] = (ws.pos.weight * center).sum();
    if (outp.angular) {
      outp.angular->col(j).tail(h) = center.matrix();
    }
    if (outp.negative_count) {
      *outp.negative_count += (center < 0.0).count();
    }
    in.swap(out);
  }
  outp.outflow_right = (ws.pos.weight * ws.pos.mu_abs * in).sum();

  in.setZero();
  for (int j = n - 1; j >= 0; --j) {
    out = ws.neg.r1.col(j) * in + ws.neg.r2.col(j) * emission[j];
    center = 0.5 * (in + out);
    (*outp.scalar)[j] += (ws.neg.weight * center).sum();
    if (outp.angular) {
      outp.angular->col(j).head(h) = center.matrix();
    }
    if (outp.negative_count) {
      *outp.negative_count += (center < 0.0).count();
    }
    in.swap(out);
  }
  outp.outflow_left = (ws.neg.weight * ws.neg.mu_abs * in).sum();
}

}  // namespace

SweepResult sweep(const Mesh& mesh, const Quadrature& quad,
                  const Eigen::ArrayXd& emission) {
  SweepWorkspace ws(mesh, quad);
  SweepResult result;
  result.angular.resize(quad.order(), mesh.n_cells());
  result.scalar.resize(mesh.n_cells());

  SweepOutputs outp;
  outp.scalar = &result.scalar;
  outp.angular = &result.angular;
  outp.negative_count = &result.negative_count;
  run_sweep(ws, mesh, emission, outp);
  result.outflow_left = outp.outflow_left;
  result.outflow_right = outp.outflow_right;
  return result;
}

NonConvergenceError::NonConvergenceError(const std::string& what,
                                         FluxField last_iterate,
                                         std::vector<double> residual_history)
    : std::runtime_error(what),
      last_iterate_(std::move(last_iterate)),
      history_(std::move(residual_history)) {}

FluxField solve_fixed_source(const Mesh& mesh, const Quadrature& quad,
                             const SolveOptions& opts, ModelTag tag) {
  const int n = mesh.n_cells();
  SweepWorkspace ws(mesh, quad);
  const Eigen::ArrayXd widths = mesh.widths();
  const double source_total = (mesh.q * widths).sum();
  const bool has_scattering = (mesh.sigma_s > 0.0).any();

  Eigen::ArrayXd phi = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd phi_new(n);
  Eigen::ArrayXd emission(n);
  std::vector<double> history;

  SweepOutputs outp;
  outp.scalar = &phi_new;

  long iterations = 0;
  double change = 0.0;
  double balance = 0.0;
  bool converged = false;
  while (iterations < opts.max_iters) {
    ++iterations;
    emission = mesh.sigma_s * phi + mesh.q;
    run_sweep(ws, mesh, emission, outp);

    change = ((phi_new - phi).abs() / phi_new.abs().max(1e-300)).maxCoeff();
    // The converged-field balance defect equals the scattering-source lag
    // exactly, so guard on it as well (keeps balance well inside 10*tol).
    const double lag = (mesh.sigma_s * (phi_new - phi) * widths).sum();
    balance = (source_total > 0.0) ? std::abs(lag) / source_total : 0.0;
    history.push_back(change);
    phi.swap(phi_new);

    if (!has_scattering || (change <= opts.tol && balance <= opts.tol)) {
      converged = true;
      break;
    }
  }

  // Final bookkeeping sweep: replays the converged emission to count
  // negative fluxes, capture boundary currents, and (optionally) store the
  // angular flux. phi is reproduced bitwise.
  FluxField flux;
  flux.tag = tag;
  flux.mesh = mesh;
  long negatives = 0;
  Eigen::MatrixXd angular;
  if (opts.keep_angular) {
    angular.resize(quad.order(), n);
    outp.angular = &angular;
  }
  outp.negative_count = &negatives;
  run_sweep(ws, mesh, emission, outp);
  flux.scalar_flux = phi_new;
  if (opts.keep_angular) flux.angular_flux = std::move(angular);
  flux.info.iterations = iterations;
  flux.info.residual = change;
  flux.info.negative_angular_fluxes = negatives;
  flux.info.outflow_left = outp.outflow_left;
  flux.info.outflow_right = outp.outflow_right;
  const double absorption = ((mesh.sigma_t - mesh.sigma_s) * phi * widths).sum();
  flux.info.balance_residual =
      (source_total > 0.0)
          ? std::abs(absorption + outp.outflow_left + outp.outflow_right -
                     source_total) /
                source_total
          : 0.0;

  if (!converged) {
    throw NonConvergenceError(
        "solve_fixed_source: no convergence after " +
            std::to_string(iterations) + " iterations (change " +
            std::to_string(change) + ")",
        std::move(flux), std::move(history));
  }
  return flux;
}

}  // namespace slabmix
