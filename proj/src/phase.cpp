#include "mvphase/phase.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <tuple>

#include "mvphase/parallel.hpp"

namespace mvphase {

void ContourGrid::validate() const {
    if (!(sigma_a_lo > 0.0)) throw std::invalid_argument("ContourGrid: sigma_a_lo must be > 0");
    if (!(sigma_a_lo < sigma_a_hi))
        throw std::invalid_argument("ContourGrid: sigma_a range must be ordered");
    if (!(sigma_m_lo >= 0.0)) throw std::invalid_argument("ContourGrid: sigma_m_lo must be >= 0");
    if (!(sigma_m_lo < sigma_m_hi))
        throw std::invalid_argument("ContourGrid: sigma_m range must be ordered");
    if (nx < 2 || ny < 2) throw std::invalid_argument("ContourGrid: resolution must be >= 2x2");
}

double critical_sigma_dawson(double theta, double a, const QuadratureSpec& spec) {
    if (!(theta > 0.0)) throw std::invalid_argument("critical_sigma_dawson: theta must be > 0");
    if (!(a > 0.0)) throw std::invalid_argument("critical_sigma_dawson: a must be > 0");

    auto slope = [&](double sa) {
        ModelParams p;
        p.nu = 1.0;
        p.sigma_a = sa;
        p.sigma_m = 0.0;
        p.a = a;
        p.theta = theta;
        return self_consistency_slope_analytic(p, spec);
    };
    const double lo = 0.05, hi = 10.0;
    const double f_lo = slope(lo), f_hi = slope(hi);
    if (f_lo * f_hi > 0.0)
        throw BracketError("critical_sigma_dawson: no sign change of the additive slope in "
                           "[0.05, 10]");
    return find_root(slope, Bracket{lo, hi, f_lo, f_hi}, 1e-10);
}

PhaseLabel classify(const ModelParams& p, const QuadratureSpec& spec) {
    return self_consistency_slope_analytic(p, spec) > 0.0 ? PhaseLabel::Stable
                                                          : PhaseLabel::Unstable;
}

// ---------------------------------------------------------------------------
// contour tracing
// ---------------------------------------------------------------------------

namespace {

constexpr double kContourSlopeTol = 1e-5;

struct EdgeKey {
    int i, j;
    bool horizontal;
    bool operator<(const EdgeKey& o) const {
        return std::tie(i, j, horizontal) < std::tie(o.i, o.j, o.horizontal);
    }
};

// Bisect along a grid edge until the slope magnitude drops below tolerance.
std::pair<double, double> refine_edge(const std::function<double(double, double)>& slope,
                                      double x0, double y0, double v0, double x1, double y1,
                                      double v1) {
    double lo = 0.0, hi = 1.0;
    const bool lo_positive = v0 > 0.0;
    (void)v1;
    double xs = x0, ys = y0;
    for (int iter = 0; iter < 64; ++iter) {
        const double mid = 0.5 * (lo + hi);
        xs = x0 + mid * (x1 - x0);
        ys = y0 + mid * (y1 - y0);
        const double v = slope(xs, ys);
        if (std::abs(v) < kContourSlopeTol) return {xs, ys};
        if ((v > 0.0) == lo_positive)
            lo = mid;
        else
            hi = mid;
    }
    return {xs, ys};
}

}  // namespace

PhaseContour trace_contour(double nu, const ContourGrid& grid, const QuadratureSpec& spec,
                           unsigned threads, double a, double theta) {
    grid.validate();
    PhaseContour contour;
    contour.nu = nu;
    contour.grid = grid;

    const int nx = grid.nx, ny = grid.ny;
    const double dx = (grid.sigma_a_hi - grid.sigma_a_lo) / static_cast<double>(nx - 1);
    const double dy = (grid.sigma_m_hi - grid.sigma_m_lo) / static_cast<double>(ny - 1);
    auto sa_at = [&](int i) { return grid.sigma_a_lo + dx * static_cast<double>(i); };
    auto sm_at = [&](int j) { return grid.sigma_m_lo + dy * static_cast<double>(j); };

    auto slope = [&](double sa, double sm) {
        ModelParams p;
        p.nu = nu;
        p.sigma_a = sa;
        p.sigma_m = sm;
        p.a = a;
        p.theta = theta;
        return self_consistency_slope_analytic(p, spec);
    };

    // pass 1: slope signs on the grid (rows in parallel)
    std::vector<double> values(static_cast<std::size_t>(nx * ny));
    parallel_for_blocks(static_cast<std::size_t>(ny), 1, threads, [&](std::size_t j0,
                                                                      std::size_t j1) {
        for (std::size_t j = j0; j < j1; ++j)
            for (int i = 0; i < nx; ++i)
                values[j * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i)] =
                    slope(sa_at(i), sm_at(static_cast<int>(j)));
    });
    auto value_at = [&](int i, int j) {
        return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                      static_cast<std::size_t>(i)];
    };
    auto inside = [&](int i, int j) { return value_at(i, j) > 0.0; };

    // pass 2: marching squares; collect crossing edges and cell segments
    std::map<EdgeKey, int> edge_index;
    std::vector<EdgeKey> edges;
    std::vector<std::pair<int, int>> segments;
    auto edge_id = [&](int i, int j, bool horizontal) {
        const EdgeKey key{i, j, horizontal};
        auto it = edge_index.find(key);
        if (it != edge_index.end()) return it->second;
        const int idx = static_cast<int>(edges.size());
        edge_index.emplace(key, idx);
        edges.push_back(key);
        return idx;
    };

    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const bool c00 = inside(i, j), c10 = inside(i + 1, j);
            const bool c11 = inside(i + 1, j + 1), c01 = inside(i, j + 1);
            const int code = (c00 ? 1 : 0) | (c10 ? 2 : 0) | (c11 ? 4 : 0) | (c01 ? 8 : 0);
            if (code == 0 || code == 15) continue;

            const int bottom = edge_id(i, j, true);
            const int top = edge_id(i, j + 1, true);
            const int left = edge_id(i, j, false);
            const int right = edge_id(i + 1, j, false);

            auto add = [&](int e1, int e2) { segments.emplace_back(e1, e2); };
            switch (code) {
                case 1: add(left, bottom); break;
                case 2: add(bottom, right); break;
                case 3: add(left, right); break;
                case 4: add(right, top); break;
                case 6: add(bottom, top); break;
                case 7: add(left, top); break;
                case 8: add(left, top); break;
                case 9: add(bottom, top); break;
                case 11: add(right, top); break;
                case 12: add(left, right); break;
                case 13: add(bottom, right); break;
                case 14: add(left, bottom); break;
                case 5:
                case 10: {
                    // saddle: disambiguate with a centre sample
                    const bool centre =
                        slope(sa_at(i) + 0.5 * dx, sm_at(j) + 0.5 * dy) > 0.0;
                    const bool pairs_match_c00 = (code == 5) == centre;
                    if (pairs_match_c00) {
                        add(bottom, right);
                        add(left, top);
                    } else {
                        add(left, bottom);
                        add(right, top);
                    }
                    break;
                }
                default: break;
            }
        }
    }
    if (segments.empty()) return contour;

    // pass 3: refine crossing edges (in parallel)
    std::vector<std::pair<double, double>> refined(edges.size());
    parallel_for_blocks(edges.size(), 4, threads, [&](std::size_t e0, std::size_t e1) {
        for (std::size_t e = e0; e < e1; ++e) {
            const EdgeKey& k = edges[e];
            const double x0 = sa_at(k.i), y0 = sm_at(k.j);
            const double x1 = k.horizontal ? sa_at(k.i + 1) : x0;
            const double y1 = k.horizontal ? y0 : sm_at(k.j + 1);
            const double v0 = value_at(k.i, k.j);
            const double v1 = k.horizontal ? value_at(k.i + 1, k.j) : value_at(k.i, k.j + 1);
            refined[e] = refine_edge(slope, x0, y0, v0, x1, y1, v1);
        }
    });

    // pass 4: chain segments into ordered polylines
    std::vector<std::vector<int>> adjacency(edges.size());
    for (const auto& [e1, e2] : segments) {
        adjacency[static_cast<std::size_t>(e1)].push_back(e2);
        adjacency[static_cast<std::size_t>(e2)].push_back(e1);
    }
    std::vector<bool> used(edges.size(), false);
    std::vector<std::vector<int>> chains;
    auto walk = [&](int start) {
        std::vector<int> chain{start};
        used[static_cast<std::size_t>(start)] = true;
        int current = start;
        for (;;) {
            int next = -1;
            for (int nb : adjacency[static_cast<std::size_t>(current)]) {
                if (!used[static_cast<std::size_t>(nb)]) {
                    next = nb;
                    break;
                }
            }
            if (next < 0) break;
            used[static_cast<std::size_t>(next)] = true;
            chain.push_back(next);
            current = next;
        }
        return chain;
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {  // open chains from endpoints first
        if (!used[e] && adjacency[e].size() == 1) chains.push_back(walk(static_cast<int>(e)));
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {  // remaining loops
        if (!used[e] && !adjacency[e].empty()) chains.push_back(walk(static_cast<int>(e)));
    }

    auto min_sm = [&](const std::vector<int>& chain) {
        double m = std::numeric_limits<double>::infinity();
        for (int e : chain) m = std::min(m, refined[static_cast<std::size_t>(e)].second);
        return m;
    };
    std::sort(chains.begin(), chains.end(), [&](const auto& l, const auto& r) {
        return min_sm(l) < min_sm(r);
    });
    for (auto& chain : chains) {
        if (refined[static_cast<std::size_t>(chain.front())].second >
            refined[static_cast<std::size_t>(chain.back())].second)
            std::reverse(chain.begin(), chain.end());
        for (int e : chain) contour.points.push_back(refined[static_cast<std::size_t>(e)]);
    }
    contour.refined = true;
    return contour;
}

// ---------------------------------------------------------------------------
// bifurcation diagrams and phase sequences
// ---------------------------------------------------------------------------

BifurcationDiagram bifurcation(double nu, const SweepPath& path, int n_samples,
                               const QuadratureSpec& spec) {
    if (n_samples < 2) throw std::invalid_argument("bifurcation: n_samples must be >= 2");
    if (!(path.lo < path.hi)) throw std::invalid_argument("bifurcation: requires lo < hi");

    BifurcationDiagram diagram;
    diagram.nu = nu;
    diagram.path = path;
    diagram.samples.reserve(static_cast<std::size_t>(n_samples));

    for (int s = 0; s < n_samples; ++s) {
        const double t =
            path.lo + (path.hi - path.lo) * static_cast<double>(s) / (n_samples - 1.0);
        ModelParams p = path.base;
        p.nu = nu;
        switch (path.kind) {
            case SweepKind::Ray:
                p.sigma_a = t;
                p.sigma_m = path.ratio * t;
                break;
            case SweepKind::SigmaM: p.sigma_m = t; break;
            case SweepKind::Theta: p.theta = t; break;
        }
        diagram.samples.emplace_back(t, find_stationary_means(p, spec).roots);
    }
    return diagram;
}

std::string encode_sequence(const std::vector<int>& counts) {
    if (counts.empty()) return {};
    std::vector<int> runs{counts.front()};
    for (int c : counts) {
        if (c != runs.back()) runs.push_back(c);
    }
    std::string out;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        out += std::to_string(runs[i]);
        if (i + 1 < runs.size()) out += "→";
    }
    if (runs.size() == 1) out += "→";  // no transition up to the sweep limit
    return out;
}

PhaseSequence phase_sequence(double nu, double sigma_a, double sigma_m_max, int n_samples,
                             const QuadratureSpec& spec, double a, double theta) {
    if (n_samples < 2) throw std::invalid_argument("phase_sequence: n_samples must be >= 2");
    if (!(sigma_m_max > 0.0))
        throw std::invalid_argument("phase_sequence: sigma_m_max must be > 0");

    PhaseSequence seq;
    seq.counts.reserve(static_cast<std::size_t>(n_samples));
    for (int s = 0; s < n_samples; ++s) {
        ModelParams p;
        p.nu = nu;
        p.sigma_a = sigma_a;
        p.sigma_m = sigma_m_max * static_cast<double>(s) / (n_samples - 1.0);
        p.a = a;
        p.theta = theta;
        seq.counts.push_back(static_cast<int>(find_stationary_means(p, spec).roots.size()));
    }
    seq.notation = encode_sequence(seq.counts);
    return seq;
}

// ---------------------------------------------------------------------------
// nu thresholds
// ---------------------------------------------------------------------------

NuThresholds estimate_nu_thresholds(const QuadratureSpec& spec, const NuThresholdOptions& opts) {
    NuThresholds out;
    const double sigma_c = critical_sigma_dawson(1.0, 1.0, spec);

    // nu3: sign change of the small-sigma_m gradient at the critical temperature
    auto grad = [&](double nu) { return small_sigma_m_gradient(nu, sigma_c, 1.0, spec); };
    {
        const double lo = 0.3, hi = 0.7;
        const double f_lo = grad(lo), f_hi = grad(hi);
        if (f_lo * f_hi > 0.0)
            throw BracketError("estimate_nu_thresholds: gradient does not change sign on "
                               "[0.3, 0.7]");
        out.nu3 = find_root(grad, Bracket{lo, hi, f_lo, f_hi}, 1e-10);
    }

    // nu2: threshold formula equals sigma_c
    auto excess = [&](double nu) { return large_sigma_m_sign_change(nu) - sigma_c; };
    {
        const double lo = 0.01, hi = 0.49;
        const double f_lo = excess(lo), f_hi = excess(hi);
        if (f_lo * f_hi > 0.0)
            throw BracketError("estimate_nu_thresholds: threshold formula never crosses "
                               "sigma_c on [0.01, 0.49]");
        out.nu2 = find_root(excess, Bracket{lo, hi, f_lo, f_hi}, 1e-10);
    }

    // nu1: largest nu at which the contour's peak sigma_a still equals its
    // large-sigma_m asymptote (peak exceeds the asymptote above nu1)
    ContourGrid grid;
    grid.sigma_a_lo = 0.6;
    grid.sigma_a_hi = 2.0;
    grid.sigma_m_lo = 0.0;
    grid.sigma_m_hi = opts.sigma_m_max;
    grid.nx = opts.contour_nx;
    grid.ny = opts.contour_ny;
    auto peak_exceeds_asymptote = [&](double nu) {
        const PhaseContour c = trace_contour(nu, grid, spec, opts.threads);
        if (c.points.empty()) return false;
        double peak = 0.0;
        for (const auto& [sa, sm] : c.points) peak = std::max(peak, sa);
        return peak > large_sigma_m_sign_change(nu);
    };
    double lo = opts.nu_lo, hi = opts.nu_hi;
    if (peak_exceeds_asymptote(lo)) {
        out.nu1 = lo;
    } else if (!peak_exceeds_asymptote(hi)) {
        out.nu1 = hi;
    } else {
        while (hi - lo > opts.nu_tol) {
            const double mid = 0.5 * (lo + hi);
            if (peak_exceeds_asymptote(mid))
                hi = mid;
            else
                lo = mid;
        }
        out.nu1 = 0.5 * (lo + hi);
    }
    return out;
}

}  // namespace mvphase
