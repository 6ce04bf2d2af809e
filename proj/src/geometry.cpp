#include "sieveflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sieveflow::geometry {

using nlohmann::json;

// ============================================================================
// Parameter validation
// ============================================================================

void PipeParams::validate() const {
    if (!(h > R && R > 0.0))
        throw ParameterError("PipeParams: require h > R > 0, got R=" + std::to_string(R) +
                             " h=" + std::to_string(h));
    if (dim != 2 && dim != 3)
        throw ParameterError("PipeParams: dim must be 2 or 3");
}

double PipeParams::section_measure() const {
    return dim == 3 ? M_PI * R * R : 2.0 * R;
}

double PipeParams::volume() const { return section_measure() * 2.0 * h; }

void PerforationParams::validate() const {
    if (!(epsilon > 0.0 && epsilon <= epsilon_star && epsilon_star < 1.0))
        throw ParameterError("PerforationParams: require 0 < epsilon <= epsilon_star < 1");
    if (!(alpha > 0.0))
        throw ParameterError("PerforationParams: require alpha > 0");
    if (!(delta0 > 0.0 && delta1 > 0.0))
        throw ParameterError("PerforationParams: require delta0, delta1 > 0");
    const double r = r_eps();
    if (!(r > 0.0 && r < 1.0))
        throw ParameterError("PerforationParams: derived r_eps out of (0,1)");
}

double PerforationParams::r_eps() const { return hole_radius(epsilon, alpha); }

double hole_radius(double epsilon, double alpha) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ParameterError("hole_radius: epsilon must lie in (0,1)");
    if (!(alpha > 0.0))
        throw ParameterError("hole_radius: alpha must be positive");
    return std::exp(-std::pow(epsilon, -alpha));
}

long long max_hole_count(double R, double delta1, double epsilon) {
    if (!(R > 0.0 && delta1 > 0.0 && epsilon > 0.0))
        throw ParameterError("max_hole_count: all inputs must be positive");
    const double q = R / (delta1 * epsilon);
    return static_cast<long long>(std::floor(q * q));
}

LayoutStrategy layout_strategy_from_string(const std::string& s) {
    if (s == "square_lattice") return LayoutStrategy::SquareLattice;
    if (s == "hex_lattice") return LayoutStrategy::HexLattice;
    if (s == "explicit") return LayoutStrategy::Explicit;
    throw ConfigError("unknown layout strategy: " + s);
}

std::string to_string(LayoutStrategy s) {
    switch (s) {
        case LayoutStrategy::SquareLattice: return "square_lattice";
        case LayoutStrategy::HexLattice: return "hex_lattice";
        case LayoutStrategy::Explicit: return "explicit";
    }
    return "?";
}

// ============================================================================
// Layout generation
// ============================================================================

namespace {

// 1D lattice on the sieve segment: best of vertex-centered and offset
// placements under |x| < limit with the given pitch.
std::vector<double> lattice_1d(double pitch, double limit) {
    std::vector<double> centered{0.0};
    for (int k = 1; k * pitch < limit; ++k) {
        centered.push_back(k * pitch);
        centered.push_back(-k * pitch);
    }
    std::vector<double> offset;
    for (int k = 0; (k + 0.5) * pitch < limit; ++k) {
        offset.push_back((k + 0.5) * pitch);
        offset.push_back(-(k + 0.5) * pitch);
    }
    std::vector<double>& best = offset.size() > centered.size() ? offset : centered;
    std::sort(best.begin(), best.end());
    return best;
}

} // namespace

PerforationLayout generate_layout(const PipeParams& pipe, const PerforationParams& params,
                                  LayoutStrategy strategy,
                                  const std::vector<std::array<double, 2>>& explicit_centers,
                                  const std::vector<double>& explicit_radii,
                                  double pitch_margin) {
    pipe.validate();
    params.validate();

    const double r = params.r_eps();
    const double guard = params.delta1 * params.epsilon;   // spacing-disk radius
    const double rho_default = 0.5 * params.delta0 * r;    // hole radius
    const double limit = pipe.R - guard;                   // strict center bound

    PerforationLayout layout;
    layout.pipe = pipe;
    layout.params = params;

    if (strategy == LayoutStrategy::Explicit) {
        layout.centers = explicit_centers;
        if (!explicit_radii.empty()) {
            if (explicit_radii.size() != explicit_centers.size())
                throw ParameterError("generate_layout: radii/centers size mismatch");
            layout.hole_radii = explicit_radii;
        } else {
            layout.hole_radii.assign(explicit_centers.size(), rho_default);
        }
        if (pipe.dim == 2)
            for (auto& c : layout.centers) c[1] = 0.0;
    } else {
        const double pitch = 2.0 * guard * (1.0 + pitch_margin);
        if (pipe.dim == 2) {
            for (double x : lattice_1d(pitch, limit))
                layout.centers.push_back({x, 0.0});
        } else if (strategy == LayoutStrategy::SquareLattice) {
            const int kmax = static_cast<int>(std::ceil(limit / pitch));
            for (int i = -kmax; i <= kmax; ++i)
                for (int j = -kmax; j <= kmax; ++j) {
                    const double x = i * pitch, y = j * pitch;
                    if (std::hypot(x, y) + guard < pipe.R)
                        layout.centers.push_back({x, y});
                }
        } else { // hex lattice
            const double row = pitch * std::sqrt(3.0) / 2.0;
            const int jmax = static_cast<int>(std::ceil(limit / row));
            for (int j = -jmax; j <= jmax; ++j) {
                const double shift = (j % 2 == 0) ? 0.0 : 0.5 * pitch;
                const int imax = static_cast<int>(std::ceil(limit / pitch)) + 1;
                for (int i = -imax; i <= imax; ++i) {
                    const double x = i * pitch + shift, y = j * row;
                    if (std::hypot(x, y) + guard < pipe.R)
                        layout.centers.push_back({x, y});
                }
            }
        }
        layout.hole_radii.assign(layout.centers.size(), rho_default);
        // Keep within the hole-count bound (lattice spacing already implies
        // it; trim deterministically if rounding ever disagrees).
        const long long nmax = max_hole_count(pipe.R, params.delta1, params.epsilon);
        if (static_cast<long long>(layout.centers.size()) > nmax) {
            layout.centers.resize(static_cast<std::size_t>(nmax));
            layout.hole_radii.resize(static_cast<std::size_t>(nmax));
        }
        if (layout.centers.empty())
            throw EmptyLayoutError("generate_layout: no admissible hole center (epsilon too large)");
    }

    const LayoutValidation report = validate_layout(layout);
    if (!report.ok())
        throw ParameterError("generate_layout: invalid layout\n" + report.summary());
    return layout;
}

// ============================================================================
// Layout validation
// ============================================================================

LayoutValidation validate_layout(const PerforationLayout& layout) {
    LayoutValidation rep;
    auto add = [&rep](const std::string& c, int a, int b, const std::string& d) {
        rep.violations.push_back({c, a, b, d});
    };

    try {
        layout.pipe.validate();
        layout.params.validate();
    } catch (const ParameterError& e) {
        add("parameters", -1, -1, e.what());
        return rep;
    }

    const auto& p = layout.params;
    const double r = p.r_eps();
    const double guard0 = p.delta0 * r;            // guard-disk radius
    const double guard1 = p.delta1 * p.epsilon;    // spacing-disk radius
    const int n = static_cast<int>(layout.centers.size());

    if (layout.hole_radii.size() != layout.centers.size()) {
        add("radii_size", -1, -1, "hole_radii size differs from centers size");
        return rep;
    }

    if (guard0 > guard1)
        add("guard_in_spacing", -1, -1,
            "delta0 r_eps = " + std::to_string(guard0) + " exceeds delta1 eps = " +
                std::to_string(guard1));

    for (int i = 0; i < n; ++i) {
        const auto& c = layout.centers[i];
        const double rho = layout.hole_radii[i];
        if (!(rho > 0.0) || rho > guard0)
            add("hole_in_guard", i, -1,
                "hole radius " + std::to_string(rho) + " outside (0, delta0 r_eps]");
        const double dist = layout.pipe.dim == 3 ? std::hypot(c[0], c[1]) : std::abs(c[0]);
        if (!(dist + guard1 < layout.pipe.R))
            add("strict_interior", i, -1,
                "|xi| + delta1 eps = " + std::to_string(dist + guard1) + " >= R");
        if (layout.pipe.dim == 2 && c[1] != 0.0)
            add("planar_center", i, -1, "dim-2 center has nonzero second coordinate");
    }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = layout.centers[i][0] - layout.centers[j][0];
            const double dy = layout.centers[i][1] - layout.centers[j][1];
            const double d = layout.pipe.dim == 3 ? std::hypot(dx, dy) : std::abs(dx);
            if (!(d > 2.0 * guard1))
                add("spacing", i, j,
                    "centers " + std::to_string(d) + " apart; need > " +
                        std::to_string(2.0 * guard1));
        }

    const long long nmax = max_hole_count(layout.pipe.R, p.delta1, p.epsilon);
    if (static_cast<long long>(n) > nmax)
        add("count", -1, -1,
            "N = " + std::to_string(n) + " exceeds bound " + std::to_string(nmax));

    return rep;
}

std::string LayoutValidation::summary() const {
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.constraint;
        if (v.index_a >= 0) os << "[" << v.index_a;
        if (v.index_b >= 0) os << "," << v.index_b;
        if (v.index_a >= 0) os << "]";
        os << ": " << v.detail << "\n";
    }
    return os.str();
}

// ============================================================================
// JSON serialization
// ============================================================================

std::string layout_to_json(const PerforationLayout& layout) {
    json j;
    j["R"] = layout.pipe.R;
    j["h"] = layout.pipe.h;
    j["dim"] = layout.pipe.dim;
    j["epsilon"] = layout.params.epsilon;
    j["alpha"] = layout.params.alpha;
    j["delta0"] = layout.params.delta0;
    j["delta1"] = layout.params.delta1;
    j["epsilon_star"] = layout.params.epsilon_star;
    j["centers"] = json::array();
    for (const auto& c : layout.centers) j["centers"].push_back({c[0], c[1]});
    j["hole_radii"] = layout.hole_radii;
    return j.dump(2);
}

PerforationLayout layout_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("layout_from_json: parse failure: ") + e.what());
    }
    PerforationLayout layout;
    try {
        layout.pipe.R = j.at("R").get<double>();
        layout.pipe.h = j.at("h").get<double>();
        layout.pipe.dim = j.at("dim").get<int>();
        layout.params.epsilon = j.at("epsilon").get<double>();
        layout.params.alpha = j.at("alpha").get<double>();
        layout.params.delta0 = j.at("delta0").get<double>();
        layout.params.delta1 = j.at("delta1").get<double>();
        layout.params.epsilon_star =
            j.contains("epsilon_star") ? j.at("epsilon_star").get<double>() : layout.params.epsilon;
        for (const auto& c : j.at("centers"))
            layout.centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
        layout.hole_radii = j.at("hole_radii").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw IoError(std::string("layout_from_json: missing or bad field: ") + e.what());
    }
    return layout;
}

void save_layout(const PerforationLayout& layout, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("save_layout: cannot open " + path);
    out << layout_to_json(layout) << "\n";
    if (!out) throw IoError("save_layout: write failure on " + path);
}

PerforationLayout load_layout(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_layout: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return layout_from_json(ss.str());
}

} // namespace sieveflow::geometry
