#include "riccibound/sn_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace riccibound {

namespace {

constexpr std::size_t kMonteCarloDefaultSamples = 1'000'000;
constexpr std::size_t kBinnedRuleNodes = 512;

DirichletRule two_block_rule(double a1, double a2, int n) {
    const GaussRule beta = beta_rule(n, a1, a2);
    DirichletRule out;
    out.points.reserve(beta.nodes.size());
    out.weights = beta.weights;
    for (double w : beta.nodes) out.points.push_back({w, 1.0 - w});
    return out;
}

// Stick-breaking tensor product: w1 = s1, w2 = (1-s1) s2, w3 = (1-s1)(1-s2)
// with s1 ~ Beta(a1, a2+a3) and s2 ~ Beta(a2, a3) independent.
DirichletRule three_block_rule(double a1, double a2, double a3, int n) {
    const GaussRule b1 = beta_rule(n, a1, a2 + a3);
    const GaussRule b2 = beta_rule(n, a2, a3);
    DirichletRule out;
    out.points.reserve(b1.nodes.size() * b2.nodes.size());
    out.weights.reserve(out.points.capacity());
    for (std::size_t i = 0; i < b1.nodes.size(); ++i)
        for (std::size_t j = 0; j < b2.nodes.size(); ++j) {
            const double s1 = b1.nodes[i], s2 = b2.nodes[j];
            out.points.push_back({s1, (1.0 - s1) * s2, (1.0 - s1) * (1.0 - s2)});
            out.weights.push_back(b1.weights[i] * b2.weights[j]);
        }
    return out;
}

DirichletRule monte_carlo_rule(const std::vector<double>& alphas, std::size_t samples,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::gamma_distribution<double>> gammas;
    gammas.reserve(alphas.size());
    for (double a : alphas) gammas.emplace_back(a, 1.0);
    DirichletRule out;
    out.points.reserve(samples);
    out.weights.assign(samples, 1.0 / static_cast<double>(samples));
    std::vector<double> g(alphas.size());
    for (std::size_t s = 0; s < samples; ++s) {
        double total = 0.0;
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            g[j] = gammas[j](rng);
            total += g[j];
        }
        for (double& v : g) v /= total;
        out.points.push_back(g);
    }
    return out;
}

}  // namespace

DirichletRule dirichlet_rule(const std::vector<double>& alphas, const SphereQuadrature& quad) {
    if (alphas.empty()) throw std::invalid_argument("dirichlet_rule: empty alphas");
    if (quad.nodes < 8) throw std::invalid_argument("dirichlet_rule: nodes must be >= 8");
    for (double a : alphas)
        if (a <= 0.0) throw std::invalid_argument("dirichlet_rule: alphas must be positive");

    if (alphas.size() == 1) return DirichletRule{{{1.0}}, {1.0}};

    if (quad.mode == SphereQuadratureMode::MonteCarlo)
        return monte_carlo_rule(alphas, static_cast<std::size_t>(quad.nodes), quad.seed);

    if (alphas.size() == 2) return two_block_rule(alphas[0], alphas[1], quad.nodes);
    if (alphas.size() == 3) return three_block_rule(alphas[0], alphas[1], alphas[2], quad.nodes);

    // More than three distinct blocks: no cheap exact reduction, fall back to
    // seeded Monte Carlo.
    return monte_carlo_rule(alphas, kMonteCarloDefaultSamples, quad.seed);
}

SphereRule build_sphere_rule(const RicciSpectrum& spectrum, const SphereQuadrature& quad) {
    std::vector<double> alphas;
    alphas.reserve(spectrum.blocks().size());
    for (const auto& b : spectrum.blocks()) alphas.push_back(0.5 * b.multiplicity);

    const DirichletRule dr = dirichlet_rule(alphas, quad);
    const double omega = unit_sphere_area(spectrum.dim());

    SphereRule rule;
    rule.dim = spectrum.dim();
    rule.values.reserve(dr.points.size());
    rule.weights.reserve(dr.points.size());
    for (std::size_t i = 0; i < dr.points.size(); ++i) {
        double x = 0.0;
        for (std::size_t j = 0; j < alphas.size(); ++j)
            x += spectrum.blocks()[j].value * dr.points[i][j];
        rule.values.push_back(x);
        rule.weights.push_back(omega * dr.weights[i]);
    }
    return rule;
}

SphereRule bin_rule(const SphereRule& rule, std::size_t max_nodes) {
    if (rule.size() <= max_nodes) return rule;
    std::vector<std::size_t> order(rule.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rule.values[a] < rule.values[b]; });

    double total_weight = 0.0;
    for (double w : rule.weights) total_weight += w;

    // Quantile bins: close bin b once the running weight reaches its share
    // (b+1)/max_nodes of the total.
    SphereRule out;
    out.dim = rule.dim;
    double running = 0.0, bin_w = 0.0, bin_wx = 0.0;
    std::size_t emitted = 0;
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const std::size_t i = order[idx];
        running += rule.weights[i];
        bin_w += rule.weights[i];
        bin_wx += rule.weights[i] * rule.values[i];
        const bool last = idx + 1 == order.size();
        const double boundary = total_weight * static_cast<double>(emitted + 1) /
                                static_cast<double>(max_nodes);
        if ((running >= boundary && bin_w > 0.0) || last) {
            out.values.push_back(bin_wx / bin_w);
            out.weights.push_back(bin_w);
            bin_w = bin_wx = 0.0;
            ++emitted;
        }
    }
    return out;
}

double bg_area(const RicciSpectrum& spectrum, double t) {
    if (t < 0.0) throw std::invalid_argument("bg_area: negative radius");
    const int d = spectrum.dim();
    return unit_sphere_area(d) * std::pow(sn(spectrum.lambda_min() / (d - 1), t), d - 1);
}

double bg_bound(const RicciSpectrum& spectrum, double t) {
    if (t < 0.0) throw std::invalid_argument("bg_bound: negative radius");
    if (t == 0.0) return 0.0;
    return bg_bound_cumulative(spectrum, {t}).front();
}

double ebg_area(const SphereRule& rule, double t) {
    const int d = rule.dim;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        acc += rule.weights[i] * std::pow(sn(rule.values[i] / (d - 1), t), d - 1);
    return acc;
}

double ebg_area(const RicciSpectrum& spectrum, double t, const SphereQuadrature& quad) {
    if (t < 0.0) throw std::invalid_argument("ebg_area: negative radius");
    return ebg_area(build_sphere_rule(spectrum, quad), t);
}

std::vector<double> ebg_bound_cumulative(const SphereRule& rule, const std::vector<double>& grid) {
    const int d = rule.dim;
    std::vector<double> ks(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) ks[i] = rule.values[i] / (d - 1);
    return cumulative_area_integral(ks, rule.weights, d - 1, grid);
}

std::vector<double> bg_bound_cumulative(const RicciSpectrum& spectrum,
                                        const std::vector<double>& grid) {
    const int d = spectrum.dim();
    return cumulative_area_integral({spectrum.lambda_min() / (d - 1)}, {unit_sphere_area(d)},
                                    d - 1, grid);
}

double ebg_bound(const SphereRule& rule, double t) {
    if (t < 0.0) throw std::invalid_argument("ebg_bound: negative radius");
    if (t == 0.0) return 0.0;
    return ebg_bound_cumulative(rule, {t}).front();
}

double ebg_bound(const RicciSpectrum& spectrum, double t, const SphereQuadrature& quad) {
    return ebg_bound(build_sphere_rule(spectrum, quad), t);
}

SphereAverage sphere_average(const RicciSpectrum& spectrum,
                             const std::function<double(double)>& f,
                             const SphereQuadrature& quad) {
    const SphereRule rule = build_sphere_rule(spectrum, quad);
    const double omega = unit_sphere_area(spectrum.dim());
    double mean = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        mean += rule.weights[i] * f(rule.values[i]);
    mean /= omega;

    SphereAverage out;
    out.mean = mean;
    out.samples = rule.size();
    if (quad.mode == SphereQuadratureMode::MonteCarlo) {
        // Equal-weight samples: plain variance of f over the draws.
        double var = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double dev = f(rule.values[i]) - mean;
            var += dev * dev;
        }
        var /= static_cast<double>(rule.size() - 1);
        out.std_error = std::sqrt(var / static_cast<double>(rule.size()));
    }
    return out;
}

BeamAsymptotics beam_asymptotics(int d, double t) {
    if (d < 3) throw std::invalid_argument("beam_asymptotics: d must be >= 3");
    if (t <= 0.0) throw std::invalid_argument("beam_asymptotics: t must be positive");
    BeamAsymptotics out;
    out.phi_max = std::sqrt((d - 2) / ((d - 1) * t));
    out.ratio = 2.0 / unit_sphere_area(d) *
                std::pow(2.0 * std::numbers::pi / ((d - 1) * t), 0.5 * (d - 1));
    return out;
}

void BoundCurve::validate(double tol_scale) const {
    const std::size_t n = times.size();
    if (ebg.size() != n || bg.size() != n)
        throw std::invalid_argument("BoundCurve: column length mismatch");
    if (!volume.empty() && volume.size() != n)
        throw std::invalid_argument("BoundCurve: volume column length mismatch");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, bg[i]);
    const double tol = tol_scale * scale;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && times[i] < times[i - 1]) throw std::invalid_argument("BoundCurve: times must ascend");
        if (!(ebg[i] >= 0.0) || !(bg[i] >= 0.0))
            throw std::invalid_argument("BoundCurve: negative bound value");
        if (ebg[i] > bg[i] + tol) throw std::invalid_argument("BoundCurve: eBG exceeds BG");
        if (!volume.empty()) {
            if (!(volume[i] >= 0.0)) throw std::invalid_argument("BoundCurve: negative volume");
            if (volume[i] > ebg[i] + tol) throw std::invalid_argument("BoundCurve: volume exceeds eBG");
        }
    }
}

BoundCurve bound_curve(const RicciSpectrum& spectrum, const std::vector<double>& grid,
                       const SphereQuadrature& quad) {
    SphereRule rule = build_sphere_rule(spectrum, quad);
    if (rule.size() > 4 * kBinnedRuleNodes) rule = bin_rule(rule, kBinnedRuleNodes);
    BoundCurve curve;
    curve.times = grid;
    curve.ebg = ebg_bound_cumulative(rule, grid);
    curve.bg = bg_bound_cumulative(spectrum, grid);
    return curve;
}

}  // namespace riccibound
