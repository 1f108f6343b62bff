#include "arp/curation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace arp {

namespace {

std::vector<Vec3> projected_seeds(const EnergyState& st) {
    std::vector<Vec3> ps(st.seeds.size());
    for (std::size_t i = 0; i < st.seeds.size(); ++i)
        ps[i] = st.mesh->seedProjection[i] * st.seeds[i];
    return ps;
}

std::vector<Mat3> vertex_rotations(const TiledMesh& mesh) {
    std::vector<Mat3> rot(mesh.positions.size());
    for (std::size_t u = 0; u < mesh.positions.size(); ++u)
        rot[u] = mesh.vertex_rotation((int)u);
    return rot;
}

std::vector<Vec3> vertex_positions(const TiledMesh& mesh, const std::vector<Mat3>& rot,
                                   const std::vector<Vec3>& seeds) {
    std::vector<Vec3> pos(rot.size());
    for (std::size_t u = 0; u < rot.size(); ++u) pos[u] = rot[u] * seeds[mesh.vertexSeed[u]];
    return pos;
}

double set_variance_energy(const std::vector<Vec3>& pos,
                           const std::vector<std::array<int, 2>>& edges) {
    if (edges.empty()) return 0;
    double mu = 0;
    std::vector<double> l(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        l[e] = dist2(pos[edges[e][0]], pos[edges[e][1]]);
        mu += l[e];
    }
    mu /= edges.size();
    double f = 0;
    for (double le : l) f += (le - mu) * (le - mu);
    return f / edges.size();
}

void accumulate_set_gradient(const TiledMesh& mesh, const std::vector<Mat3>& rot,
                             const std::vector<Vec3>& pos,
                             const std::vector<std::array<int, 2>>& edges,
                             std::vector<Vec3>& grad) {
    if (edges.empty()) return;
    double mu = 0;
    std::vector<double> l(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        l[e] = dist2(pos[edges[e][0]], pos[edges[e][1]]);
        mu += l[e];
    }
    mu /= edges.size();
    double m = (double)edges.size();
    // d/dl of (1/m) sum (l - mu)^2 is (2/m)(l_e - mu); the mu-dependence
    // terms sum to zero exactly
    for (std::size_t e = 0; e < edges.size(); ++e) {
        int u = edges[e][0], v = edges[e][1];
        Vec3 d = pos[u] - pos[v];
        Vec3 gpos = (4.0 / m) * ((l[e] - mu) * d);
        grad[mesh.vertexSeed[u]] += rot[u].transposed() * gpos;
        grad[mesh.vertexSeed[v]] -= rot[v].transposed() * gpos;
    }
}

}  // namespace

EnergyState make_energy_state(const TiledMesh& mesh, double lambda) {
    if (mesh.isDual || mesh.seedPositions.empty())
        throw std::invalid_argument("curation operates on primal meshes with seed data");
    EnergyState st;
    st.mesh = &mesh;
    st.seeds = mesh.seedPositions;
    st.seeds0 = mesh.seedPositionsInitial;
    st.tileEdges = mesh.edges;
    st.lambda = lambda;
    for (const auto& f : mesh.faces) {
        if (f.size() == 4) {
            st.diagonals.push_back({f[0], f[2]});
            st.diagonals.push_back({f[1], f[3]});
        } else if (f.size() == 6) {
            st.diagonals.push_back({f[0], f[3]});
            st.diagonals.push_back({f[1], f[4]});
            st.diagonals.push_back({f[2], f[5]});
        }
    }
    return st;
}

double energy(const EnergyState& state) {
    if (state.tileEdges.empty()) throw std::invalid_argument("energy: empty edge set");
    std::vector<Vec3> ps = projected_seeds(state);
    std::vector<Mat3> rot = vertex_rotations(*state.mesh);
    std::vector<Vec3> pos = vertex_positions(*state.mesh, rot, ps);

    double f = set_variance_energy(pos, state.tileEdges);
    f += set_variance_energy(pos, state.diagonals);
    double disp = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) disp += dist2(ps[i], state.seeds0[i]);
    f += state.lambda * disp / ps.size();
    return f;
}

std::vector<Vec3> gradient(const EnergyState& state) {
    std::vector<Vec3> ps = projected_seeds(state);
    std::vector<Mat3> rot = vertex_rotations(*state.mesh);
    std::vector<Vec3> pos = vertex_positions(*state.mesh, rot, ps);

    std::vector<Vec3> grad(ps.size(), Vec3{0, 0, 0});
    accumulate_set_gradient(*state.mesh, rot, pos, state.tileEdges, grad);
    accumulate_set_gradient(*state.mesh, rot, pos, state.diagonals, grad);
    double c = 2.0 * state.lambda / ps.size();
    for (std::size_t i = 0; i < ps.size(); ++i) grad[i] += c * (ps[i] - state.seeds0[i]);
    // pull back through the projection (symmetrizes stabilized seeds)
    for (std::size_t i = 0; i < ps.size(); ++i)
        grad[i] = state.mesh->seedProjection[i] * grad[i];
    return grad;
}

double worst_edge_ratio(const TiledMesh& mesh) {
    double worst = 1;
    for (const auto& f : mesh.faces) {
        double lo = 1e300, hi = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            double l = dist(mesh.positions[f[i]], mesh.positions[f[(i + 1) % f.size()]]);
            lo = std::min(lo, l);
            hi = std::max(hi, l);
        }
        worst = std::max(worst, hi / lo);
    }
    return worst;
}

std::pair<TiledMesh, CurationReport> curate(const TiledMesh& mesh, const CurationOptions& options) {
    CurationReport report;
    TiledMesh out = mesh;
    report.initialWorstRatio = report.finalWorstRatio = worst_edge_ratio(mesh);
    report.symmetryResidual = 0;

    if (curation_case(mesh.params) == CurationCase::NoWarp) {
        EnergyState st = make_energy_state(mesh, options.lambda);
        report.initialEnergy = report.finalEnergy = energy(st);
        report.energyTrace = {report.initialEnergy};
        report.symmetryResidual = symmetry_residual(out);
        return {out, report};
    }

    EnergyState st = make_energy_state(mesh, options.lambda);
    const int ns = (int)st.seeds.size();
    const int dim = 3 * ns;

    auto unflatten = [&](const std::vector<double>& x) {
        for (int i = 0; i < ns; ++i) st.seeds[i] = Vec3{x[3 * i], x[3 * i + 1], x[3 * i + 2]};
    };
    auto eval_f = [&](const std::vector<double>& x) {
        unflatten(x);
        return energy(st);
    };
    auto eval_g = [&](const std::vector<double>& x) {
        unflatten(x);
        std::vector<Vec3> g = gradient(st);
        std::vector<double> out(dim);
        for (int i = 0; i < ns; ++i) {
            out[3 * i] = g[i].x;
            out[3 * i + 1] = g[i].y;
            out[3 * i + 2] = g[i].z;
        }
        return out;
    };
    auto inf_norm = [](const std::vector<double>& v) {
        double m = 0;
        for (double t : v) m = std::max(m, std::abs(t));
        return m;
    };
    auto dotv = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    std::vector<double> x(dim);
    for (int i = 0; i < ns; ++i) {
        x[3 * i] = st.seeds[i].x;
        x[3 * i + 1] = st.seeds[i].y;
        x[3 * i + 2] = st.seeds[i].z;
    }

    double fx = eval_f(x);
    std::vector<double> g = eval_g(x);
    report.initialEnergy = fx;
    report.energyTrace.push_back(fx);

    std::deque<std::pair<std::vector<double>, std::vector<double>>> hist;  // (s, y)
    const double armijo = 1e-4;

    int iter = 0;
    for (; iter < options.maxIterations; ++iter) {
        if (inf_norm(g) <= options.gradTolerance) break;

        // two-loop recursion
        std::vector<double> q = g;
        std::vector<double> alpha(hist.size());
        for (int i = (int)hist.size() - 1; i >= 0; --i) {
            const auto& [s, y] = hist[i];
            double rho = 1.0 / dotv(y, s);
            alpha[i] = rho * dotv(s, q);
            for (int d = 0; d < dim; ++d) q[d] -= alpha[i] * y[d];
        }
        if (!hist.empty()) {
            const auto& [s, y] = hist.back();
            double gamma = dotv(s, y) / dotv(y, y);
            for (double& t : q) t *= gamma;
        }
        for (int i = 0; i < (int)hist.size(); ++i) {
            const auto& [s, y] = hist[i];
            double rho = 1.0 / dotv(y, s);
            double beta = rho * dotv(y, q);
            for (int d = 0; d < dim; ++d) q[d] += (alpha[i] - beta) * s[d];
        }
        std::vector<double> dir(dim);
        for (int d = 0; d < dim; ++d) dir[d] = -q[d];
        double slope = dotv(g, dir);
        if (slope >= 0) {  // fall back to steepest descent
            for (int d = 0; d < dim; ++d) dir[d] = -g[d];
            slope = -dotv(g, g);
        }

        double step = 1.0;
        std::vector<double> xNew(dim);
        double fNew = 0;
        bool accepted = false;
        for (int halvings = 0; halvings <= 50; ++halvings) {
            for (int d = 0; d < dim; ++d) xNew[d] = x[d] + step * dir[d];
            fNew = eval_f(xNew);
            if (fNew <= fx + armijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            report.lineSearchFailed = true;
            break;
        }

        std::vector<double> gNew = eval_g(xNew);
        std::vector<double> s(dim), y(dim);
        for (int d = 0; d < dim; ++d) {
            s[d] = xNew[d] - x[d];
            y[d] = gNew[d] - g[d];
        }
        if (dotv(s, y) > 1e-18) {
            hist.push_back({std::move(s), std::move(y)});
            if ((int)hist.size() > options.memory) hist.pop_front();
        }
        x = std::move(xNew);
        g = std::move(gNew);
        fx = fNew;
        report.energyTrace.push_back(fx);
    }
    report.iterations = iter;
    report.finalEnergy = fx;

    unflatten(x);
    std::vector<Vec3> solution(ns);
    for (int i = 0; i < ns; ++i) solution[i] = mesh.seedProjection[i] * st.seeds[i];

    out.seedPositions = solution;
    out.regenerate_positions();
    out.curated = true;

    report.finalWorstRatio = worst_edge_ratio(out);
    report.maxVertexDisplacement = 0;
    for (std::size_t u = 0; u < out.positions.size(); ++u)
        report.maxVertexDisplacement =
            std::max(report.maxVertexDisplacement, dist(out.positions[u], mesh.positions[u]));
    report.symmetryResidual = symmetry_residual(out);
    return {out, report};
}

}  // namespace arp
