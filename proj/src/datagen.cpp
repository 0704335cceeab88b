#include "cloud/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "cloud/rng.hpp"

// Each scenario draws its hyperparameters first, in the order listed in its
// comment, then the per-sample values row by row; the draw order is part of
// the reproducibility contract.

namespace cloud {
namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr std::size_t kAlphabet = 10;         // categorical alphabet when unspecified
constexpr std::size_t kConfAlphabet = 100;    // latent C in the confounded cells
constexpr int kMaxRejectionAttempts = 10000;

struct ScenarioInfo {
    Scenario s;
    const char* tag;
    Model truth;
    DataKind kind;
    const char* variant;
};

constexpr ScenarioInfo kScenarios[] = {
    {Scenario::DiscIndep, "disc_indep", Model::Independent, DataKind::Discrete, ""},
    {Scenario::DiscXtoY, "disc_xy", Model::XtoY, DataKind::Discrete, ""},
    {Scenario::DiscYtoX, "disc_yx", Model::YtoX, DataKind::Discrete, ""},
    {Scenario::DiscConf, "disc_conf", Model::Confounded, DataKind::Discrete, ""},
    {Scenario::MixIndep, "mix_indep", Model::Independent, DataKind::MixedXCont, ""},
    {Scenario::MixXtoY, "mix_xy", Model::XtoY, DataKind::MixedXCont, ""},
    {Scenario::MixYtoX, "mix_yx", Model::YtoX, DataKind::MixedXCont, ""},
    {Scenario::MixConf, "mix_conf", Model::Confounded, DataKind::MixedXCont, ""},
    {Scenario::ContIndep, "cont_indep", Model::Independent, DataKind::Continuous, ""},
    {Scenario::ContXtoY, "cont_xy", Model::XtoY, DataKind::Continuous, ""},
    {Scenario::ContYtoX, "cont_yx", Model::YtoX, DataKind::Continuous, ""},
    {Scenario::ContConf, "cont_conf", Model::Confounded, DataKind::Continuous, ""},
    {Scenario::DiscDirectNoMod, "disc_direct_nomod", Model::XtoY, DataKind::Discrete, "nomod"},
    {Scenario::MixDirectNoMod, "mix_direct_nomod", Model::XtoY, DataKind::MixedXCont, "nomod"},
    {Scenario::ContDirectLinear, "cont_direct_linear", Model::XtoY, DataKind::Continuous, "linear"},
    {Scenario::ContDirectCubic, "cont_direct_cubic", Model::XtoY, DataKind::Continuous, "cubic"},
};

const ScenarioInfo& info(Scenario s) {
    for (const auto& si : kScenarios) {
        if (si.s == s) return si;
    }
    throw std::invalid_argument("unknown scenario");
}

double mod_real(double v, double m) {
    double r = std::fmod(v, m);
    if (r < 0.0) r += m;
    return r;
}

// Population moments of the 3-component mixture below: mean -2,
// variance 0.6*29 + 0.2*1 + 0.2*29 - 4 = 19.4.
constexpr double kMixture3Mean = -2.0;
const double kMixture3Sd = std::sqrt(19.4);

// 0.6 N(-5, 2^2) + 0.2 N(0, 1) + 0.2 N(5, 2^2).
double mixture3(Rng& rng) {
    static constexpr double w[] = {0.6, 0.2, 0.2};
    switch (rng.categorical(w)) {
        case 0: return rng.normal(-5.0, 2.0);
        case 1: return rng.normal(0.0, 1.0);
        default: return rng.normal(5.0, 2.0);
    }
}

// Sign-symmetric magnitude: U([-2, -0.5] U [0.5, 2]).
double pm_uniform(Rng& rng) {
    const bool negative = rng.uniform_int(0, 1) == 1;
    const double mag = rng.uniform(0.5, 2.0);
    return negative ? -mag : mag;
}

// Uniform over all non-constant maps {0..mx-1} -> {0..my-1}, by rejection.
std::vector<std::uint64_t> random_nonconstant_function(Rng& rng, std::size_t mx,
                                                       std::size_t my) {
    std::vector<std::uint64_t> f(mx);
    for (int attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
        bool constant = true;
        for (std::size_t j = 0; j < mx; ++j) {
            f[j] = rng.uniform_int(0, my - 1);
            if (f[j] != f[0]) constant = false;
        }
        if (!constant) return f;
    }
    throw std::runtime_error("datagen: function rejection budget exhausted");
}

// Bin a raw column into m equal intervals of its sample range.
std::vector<std::size_t> equal_interval_bins(const std::vector<double>& v, std::size_t m) {
    double lo = v[0];
    double hi = v[0];
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    std::vector<std::size_t> bins(v.size(), 0);
    if (hi == lo) return bins;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double u = (v[i] - lo) / (hi - lo);
        auto k = std::size_t(u * double(m));
        bins[i] = k >= m ? m - 1 : k;
    }
    return bins;
}

// Cell probabilities proportional to iid U(0,1)^kWeightExponent. The exponent
// sets how far the weights sit from uniform: at 1.0 the quotient/remainder
// coupling is so diffuse that the cheap directed models intercept it at
// moderate n, while exponential tails (Dirichlet(1,...,1)) make the
// confounder detectable almost immediately. The value in between keeps
// detection genuinely hard below a thousand samples without opening that gap.
constexpr double kWeightExponent = 1.25;

std::vector<double> near_uniform_categorical(Rng& rng, std::size_t k) {
    std::vector<double> p(k);
    double sum = 0.0;
    for (auto& v : p) {
        v = std::pow(rng.uniform(), kWeightExponent);
        sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= double(n);
    mb /= double(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

const char* scenario_tag(Scenario s) { return info(s).tag; }

std::optional<Scenario> scenario_from_tag(const std::string& tag) {
    for (const auto& si : kScenarios) {
        if (tag == si.tag) return si.s;
    }
    return std::nullopt;
}

Model scenario_truth(Scenario s) { return info(s).truth; }
DataKind scenario_data_kind(Scenario s) { return info(s).kind; }
const char* scenario_variant(Scenario s) { return info(s).variant; }

GeneratedPair generate(const ScenarioSpec& spec, std::uint64_t trial) {
    if (spec.n == 0) throw std::invalid_argument("generate: n must be positive");
    const std::uint64_t n = spec.n;
    Rng rng(spec.seed, std::uint64_t(spec.scenario), trial);
    GeneratedPair out;
    out.kind = scenario_data_kind(spec.scenario);
    out.x.reserve(n);
    out.y.reserve(n);

    switch (spec.scenario) {
        case Scenario::DiscIndep: {
            // theta_x, theta_y ~ Dirichlet(1,..,1); X ~ Cat, Y ~ Cat.
            const auto tx = rng.flat_dirichlet(kAlphabet);
            const auto ty = rng.flat_dirichlet(kAlphabet);
            for (std::uint64_t i = 0; i < n; ++i) {
                out.x.push_back(double(rng.categorical(tx)));
                out.y.push_back(double(rng.categorical(ty)));
            }
            break;
        }
        case Scenario::DiscXtoY:
        case Scenario::DiscYtoX: {
            // theta_cause, theta_noise, f non-constant; effect = f(cause)+E mod 10.
            const auto tc = rng.flat_dirichlet(kAlphabet);
            const auto te = rng.flat_dirichlet(kAlphabet);
            const auto f = random_nonconstant_function(rng, kAlphabet, kAlphabet);
            const bool x_causes = spec.scenario == Scenario::DiscXtoY;
            for (std::uint64_t i = 0; i < n; ++i) {
                const std::size_t cause = rng.categorical(tc);
                const std::size_t e = rng.categorical(te);
                const double effect = double((f[cause] + e) % kAlphabet);
                out.x.push_back(x_causes ? double(cause) : effect);
                out.y.push_back(x_causes ? effect : double(cause));
            }
            break;
        }
        case Scenario::DiscConf: {
            // C in {0..99} with near-uniform cell weights; X = C / 10, Y = C mod 10.
            const auto tc = near_uniform_categorical(rng, kConfAlphabet);
            for (std::uint64_t i = 0; i < n; ++i) {
                const std::size_t c = rng.categorical(tc);
                out.x.push_back(double(c / 10));
                out.y.push_back(double(c % 10));
            }
            break;
        }
        case Scenario::MixIndep: {
            // X ~ N(0,1); Y ~ Cat over the default alphabet.
            const auto ty = rng.flat_dirichlet(kAlphabet);
            for (std::uint64_t i = 0; i < n; ++i) {
                out.x.push_back(rng.normal());
                out.y.push_back(double(rng.categorical(ty)));
            }
            break;
        }
        case Scenario::MixXtoY: {
            // Per attempt: m_x ~ U{2..4}; f over intervals ~ U{0..10};
            // X ~ 3-component mixture; E_Y ~ U{-1,0,1};
            // Y = f(interval(X)) + E_Y over R/10Z. Accept when corr > 0.2.
            for (int attempt = 0;; ++attempt) {
                if (attempt >= kMaxRejectionAttempts) {
                    throw std::runtime_error("datagen: correlation rejection budget exhausted");
                }
                const std::size_t mx = rng.uniform_int(2, 4);
                std::vector<std::uint64_t> f(mx);
                for (auto& v : f) v = rng.uniform_int(0, 10);
                std::vector<double> xs(n);
                for (auto& v : xs) v = mixture3(rng);
                const auto bins = equal_interval_bins(xs, mx);
                std::vector<double> ys(n);
                for (std::uint64_t i = 0; i < n; ++i) {
                    const auto e = std::int64_t(rng.uniform_int(0, 2)) - 1;
                    ys[i] = mod_real(double(std::int64_t(f[bins[i]]) + e), 10.0);
                }
                if (pearson(xs, ys) > 0.2) {
                    out.x = std::move(xs);
                    out.y = std::move(ys);
                    break;
                }
            }
            break;
        }
        case Scenario::MixYtoX: {
            // m_y ~ U{2..8}; Y ~ Cat; X = 2Y + 3 sin Y + N(0,1) over R/20Z.
            const std::size_t my = rng.uniform_int(2, 8);
            const auto ty = rng.flat_dirichlet(my);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double y = double(rng.categorical(ty));
                out.y.push_back(y);
                out.x.push_back(mod_real(2.0 * y + 3.0 * std::sin(y) + rng.normal(), 20.0));
            }
            break;
        }
        case Scenario::MixConf: {
            // b ~ U(2,4); C in {0..99} with near-uniform cell weights;
            // X = b sin C + N(0, 0.1^2); Y = C / 10.
            const auto tc = near_uniform_categorical(rng, kConfAlphabet);
            const double b = rng.uniform(2.0, 4.0);
            for (std::uint64_t i = 0; i < n; ++i) {
                const std::size_t c = rng.categorical(tc);
                out.x.push_back(b * std::sin(double(c)) + rng.normal(0.0, 0.1));
                out.y.push_back(double(c / 10));
            }
            break;
        }
        case Scenario::ContIndep: {
            for (std::uint64_t i = 0; i < n; ++i) {
                out.x.push_back(rng.normal());
                out.y.push_back(rng.normal());
            }
            break;
        }
        case Scenario::ContXtoY:
        case Scenario::ContYtoX: {
            // m ~ U{2..4}; a ~ U(4,7); b ~ U(1,5); cause ~ 3-component mixture;
            // effect = a * interval(cause) + b + N(0,1) over R/20Z.
            const std::size_t m = rng.uniform_int(2, 4);
            const double a = rng.uniform(4.0, 7.0);
            const double b = rng.uniform(1.0, 5.0);
            std::vector<double> cause(n);
            for (auto& v : cause) v = mixture3(rng);
            const auto bins = equal_interval_bins(cause, m);
            std::vector<double> effect(n);
            for (std::uint64_t i = 0; i < n; ++i) {
                effect[i] = mod_real(a * double(bins[i]) + b + rng.normal(), 20.0);
            }
            const bool x_causes = spec.scenario == Scenario::ContXtoY;
            out.x = x_causes ? std::move(cause) : std::move(effect);
            out.y = x_causes ? std::move(effect) : std::move(cause);
            break;
        }
        case Scenario::ContConf: {
            // e ~ U(0.5,0.9); a ~ U{1,2,3}; eta ~ U(pi/4, pi/3); phi ~ U[0, 2pi);
            // r = a(1-e^2)/(1+e cos phi); X = r cos(phi+eta) + E_X,
            // Y = r sin(phi+eta) + E_Y, E ~ N(0, (0.1a)^2).
            const double e = rng.uniform(0.5, 0.9);
            const double a = double(rng.uniform_int(1, 3));
            const double eta = rng.uniform(kTwoPi / 8.0, kTwoPi / 6.0);
            const double sd = 0.1 * a;
            for (std::uint64_t i = 0; i < n; ++i) {
                const double phi = rng.uniform(0.0, kTwoPi);
                const double r = a * (1.0 - e * e) / (1.0 + e * std::cos(phi));
                out.x.push_back(r * std::cos(phi + eta) + rng.normal(0.0, sd));
                out.y.push_back(r * std::sin(phi + eta) + rng.normal(0.0, sd));
            }
            break;
        }
        case Scenario::DiscDirectNoMod: {
            // As DiscXtoY but the addition leaves the alphabet: Y = f(X) + E.
            const auto tx = rng.flat_dirichlet(kAlphabet);
            const auto te = rng.flat_dirichlet(kAlphabet);
            const auto f = random_nonconstant_function(rng, kAlphabet, kAlphabet);
            for (std::uint64_t i = 0; i < n; ++i) {
                const std::size_t x = rng.categorical(tx);
                const std::size_t e = rng.categorical(te);
                out.x.push_back(double(x));
                out.y.push_back(double(f[x] + e));
            }
            break;
        }
        case Scenario::MixDirectNoMod: {
            // X ~ N(0, 10^2); m_x ~ U{2..4}; f over intervals ~ U{1..24};
            // Y = f(interval(X)) + U{-1,0,1}, no wraparound.
            const std::size_t mx = rng.uniform_int(2, 4);
            std::vector<std::uint64_t> f(mx);
            for (auto& v : f) v = rng.uniform_int(1, 24);
            std::vector<double> xs(n);
            for (auto& v : xs) v = rng.normal(0.0, 10.0);
            const auto bins = equal_interval_bins(xs, mx);
            out.x = std::move(xs);
            out.y.resize(n);
            for (std::uint64_t i = 0; i < n; ++i) {
                const auto e = std::int64_t(rng.uniform_int(0, 2)) - 1;
                out.y[i] = double(std::int64_t(f[bins[i]]) + e);
            }
            break;
        }
        case Scenario::ContDirectLinear:
        case Scenario::ContDirectCubic: {
            // a, b ~ U([-2,-0.5] U [0.5,2]); X ~ 3-component mixture;
            // Y = a f(Z) + b sin(2 pi Z) + N(0,1) with Z the population-
            // standardized X and f linear or cubic. Standardizing keeps the
            // sine term material: on the raw scale the trend term would dwarf
            // it and the direction would hinge on noise alone.
            const double a = pm_uniform(rng);
            const double b = pm_uniform(rng);
            const bool cubic = spec.scenario == Scenario::ContDirectCubic;
            for (std::uint64_t i = 0; i < n; ++i) {
                const double x = mixture3(rng);
                const double z = (x - kMixture3Mean) / kMixture3Sd;
                const double fz = cubic ? z * z * z : z;
                out.x.push_back(x);
                out.y.push_back(a * fz + b * std::sin(kTwoPi * z) + rng.normal());
            }
            break;
        }
    }
    return out;
}

GeneratedPair non_cyclic_direct(const ScenarioSpec& spec, std::uint64_t trial) {
    switch (spec.scenario) {
        case Scenario::DiscDirectNoMod:
        case Scenario::MixDirectNoMod:
        case Scenario::ContDirectLinear:
        case Scenario::ContDirectCubic:
            return generate(spec, trial);
        default:
            throw std::invalid_argument("non_cyclic_direct: not a direct-case scenario");
    }
}

}  // namespace cloud
