#include "globalprop/refprop.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <utility>

#include "globalprop/errors.hpp"

namespace globalprop::refprop {

namespace {

const Complex kImag(0.0, 1.0);

void check_initial(const Eigen::VectorXcd& psi0, const StepPropagatorConfig& config) {
    if (config.n_steps < 2) throw ConfigError("propagator: need at least 2 steps");
    if (std::abs(psi0.norm() - 1.0) > 1e-8)
        throw ConfigError("propagator: initial state must be normalized");
}

struct Saver {
    Trajectory traj;
    int stride;
    int n_states;
    int count = 0;

    Saver(int n_steps, int save_stride, int nv) : stride(save_stride), n_states(nv) {
        int saved = (stride > 0) ? n_steps / stride + 1 : 1;
        traj.times.reserve(static_cast<size_t>(saved) + 1);
        traj.states.resize(nv, saved + 1);
    }
    void maybe_save(int step, double t, const Eigen::VectorXcd& psi, bool final) {
        if (!final && (stride == 0 || step % stride != 0)) return;
        if (count >= traj.states.cols()) traj.states.conservativeResize(n_states, count + 1);
        traj.states.col(count) = psi;
        traj.times.push_back(t);
        ++count;
    }
    Trajectory take() {
        traj.states.conservativeResize(n_states, count);
        return std::move(traj);
    }
};

}  // namespace

Trajectory split_sod_propagate(const Eigen::VectorXcd& psi0, const MolecularModel& model,
                               double t_end, const StepPropagatorConfig& config) {
    check_initial(psi0, config);
    const int nv = model.size();
    const double dt = t_end / config.n_steps;
    const Eigen::VectorXd& e = model.basis.energies;

    Eigen::VectorXcd half_phase(nv);
    for (int v = 0; v < nv; ++v) half_phase(v) = std::exp(-kImag * e(v) * (dt / 2.0));

    Eigen::VectorXcd psi = psi0;
    Saver saver(config.n_steps, config.save_stride, nv);
    saver.maybe_save(0, 0.0, psi, false);
    for (int s = 0; s < config.n_steps; ++s) {
        const double t_mid = (s + 0.5) * dt;
        const double field = model.field(t_mid);
        psi.array() *= half_phase.array();
        // W = -field * C frozen at the midpoint; 2nd-order differencing update.
        Eigen::VectorXcd cu = model.coupling * psi;
        Eigen::VectorXcd ccu = model.coupling * cu;
        psi += (kImag * dt * field) * cu - (0.5 * dt * dt * field * field) * ccu;
        psi.array() *= half_phase.array();
        saver.maybe_save(s + 1, (s + 1) * dt, psi, s + 1 == config.n_steps);
    }
    return saver.take();
}

Trajectory sil_propagate(const Eigen::VectorXcd& psi0, const MolecularModel& model, double t_end,
                         const StepPropagatorConfig& config) {
    check_initial(psi0, config);
    const int nv = model.size();
    if (config.lanczos_dim < 2 || config.lanczos_dim > nv)
        throw ConfigError("sil: lanczos_dim must lie in [2, N_v]");
    const double dt = t_end / config.n_steps;
    const Eigen::VectorXd& e = model.basis.energies;
    const int m = config.lanczos_dim;

    Eigen::MatrixXcd basis(nv, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXcd psi = psi0;
    Saver saver(config.n_steps, config.save_stride, nv);
    saver.maybe_save(0, 0.0, psi, false);

    for (int s = 0; s < config.n_steps; ++s) {
        const double field = model.field((s + 0.5) * dt);
        auto apply_h = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
            return e.cast<Complex>().cwiseProduct(v) - field * (model.coupling * v);
        };

        const double norm0 = psi.norm();
        basis.col(0) = psi / norm0;
        int m_eff = m;
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXcd w = apply_h(basis.col(j));
            alpha(j) = w.dot(basis.col(j)).real();
            w -= alpha(j) * basis.col(j);
            if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
            // Full reorthogonalization; the subspace is tiny.
            for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
            const double b = w.norm();
            if (j + 1 == m) break;
            if (b < 1e-14) {
                m_eff = j + 1;  // Krylov breakdown: exact subspace reached
                break;
            }
            beta(j) = b;
            basis.col(j + 1) = w / b;
        }

        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m_eff, m_eff);
        for (int j = 0; j < m_eff; ++j) {
            tri(j, j) = alpha(j);
            if (j + 1 < m_eff) tri(j, j + 1) = tri(j + 1, j) = beta(j);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        Eigen::VectorXcd small = Eigen::VectorXcd::Zero(m_eff);
        for (int a = 0; a < m_eff; ++a) {
            const Complex phase = std::exp(-kImag * es.eigenvalues()(a) * dt);
            small += phase * es.eigenvectors()(0, a) * es.eigenvectors().col(a).cast<Complex>();
        }
        psi = norm0 * (basis.leftCols(m_eff) * small);
        saver.maybe_save(s + 1, (s + 1) * dt, psi, s + 1 == config.n_steps);
    }
    return saver.take();
}

Eigen::VectorXcd reconstruct_wave_operator(const Eigen::VectorXcd& psi, int initial_index) {
    const Complex pivot = psi(initial_index);
    if (std::abs(pivot) < 1e-12)
        throw NumericalError("wave-operator reconstruction: model-space component vanished");
    return psi / pivot;
}

double cross_convergence_factor(const Eigen::VectorXcd& omega_a, const Eigen::VectorXcd& omega_b) {
    if (omega_a.size() != omega_b.size())
        throw ConfigError("cross convergence factor: dimension mismatch");
    return (omega_a - omega_b).squaredNorm();
}

}  // namespace globalprop::refprop
