// Command-line front end: band reports for graphene and carbon nanotubes
// driven by the Hill discriminant of an even edge potential.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexband/eigenstates.hpp"
#include "hexband/errors.hpp"
#include "hexband/graphene.hpp"
#include "hexband/hill.hpp"
#include "hexband/nanotube.hpp"
#include "hexband/potential.hpp"

namespace {

using nlohmann::json;
using namespace hexband;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Flat key=value files ('#' comments, blank lines ignored).

std::map<std::string, std::string> load_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ": empty key");
        kv[key] = val;
    }
    return kv;
}

std::vector<double> parse_list(const std::string& s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) throw ConfigError("malformed number list: " + s);
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad value for " + key + ": " + s);
    }
}

int parse_int(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad value for " + key + ": " + s);
    }
}

Potential potential_from_kv(const std::map<std::string, std::string>& kv) {
    auto get = [&](const std::string& k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    std::string kind = get("kind").value_or("zero");
    if (kind == "zero") return Potential::zero();
    if (kind == "cosine") {
        auto amp = get("amplitude");
        if (!amp) throw ConfigError("cosine potential needs amplitude");
        int harm = get("harmonics") ? parse_int(*get("harmonics"), "harmonics") : 1;
        return Potential::cosine(parse_double(*amp, "amplitude"), harm);
    }
    if (kind == "polynomial") {
        auto c = get("coefficients");
        if (!c) throw ConfigError("polynomial potential needs coefficients");
        return Potential::polynomial(parse_list(*c));
    }
    if (kind == "piecewise") {
        auto b = get("breakpoints"), v = get("values");
        if (!b || !v)
            throw ConfigError("piecewise potential needs breakpoints and values");
        return Potential::piecewise_constant(parse_list(*b), parse_list(*v));
    }
    if (kind == "tabulated") {
        auto s = get("samples");
        if (!s) throw ConfigError("tabulated potential needs samples");
        return Potential::tabulated(parse_list(*s));
    }
    throw ConfigError("unknown potential kind: " + kind);
}

// ---------------------------------------------------------------------------
// Run configuration: defaults <- config file <- potential file <- flags.

struct Options {
    std::map<std::string, std::string> pot_kv; // potential block
    double window_lo = -1.0, window_hi = 100.0;
    double tol = kDefaultTol;
    int surface = 0;
    std::vector<int> bands;
    int p1 = 0, p2 = 0;
    bool have_p = false;
    std::string format = "csv";
    std::string out;
    // state subcommand
    std::string state_kind = "hexagon";
    int state_index = 0;
    int state_sign = +1;
    int state_N = 2;

    Potential potential() const {
        Potential p = potential_from_kv(pot_kv);
        auto ev = validate_evenness(p, 1024);
        if (!ev.ok)
            throw ConfigError("potential is not even about 1/2 (max violation " +
                              fmt(ev.max_violation) + ")");
        return p;
    }

    void validate() const {
        if (!(window_lo < window_hi))
            throw ConfigError("window must satisfy LO < HI");
        if (!(tol > 0.0 && tol < 1e-2))
            throw ConfigError("tolerance must lie in (0, 1e-2)");
        if (surface < 0 || (surface > 0 && surface < 2))
            throw ConfigError("surface grid size must be >= 2");
        if (format != "csv" && format != "json")
            throw ConfigError("format must be csv or json");
    }
};

const char* kPotentialKeys[] = {"kind",        "amplitude", "harmonics",
                                "coefficients", "breakpoints", "values",
                                "samples"};

void apply_config(Options& o, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (std::find_if(std::begin(kPotentialKeys), std::end(kPotentialKeys),
                         [&](const char* pk) { return k == pk; }) !=
            std::end(kPotentialKeys)) {
            o.pot_kv[k] = v;
        } else if (k == "window_lo") o.window_lo = parse_double(v, k);
        else if (k == "window_hi") o.window_hi = parse_double(v, k);
        else if (k == "tol") o.tol = parse_double(v, k);
        else if (k == "surface") o.surface = parse_int(v, k);
        else if (k == "bands") {
            o.bands.clear();
            for (double b : parse_list(v)) o.bands.push_back(static_cast<int>(b));
        } else if (k == "p1") { o.p1 = parse_int(v, k); o.have_p = true; }
        else if (k == "p2") { o.p2 = parse_int(v, k); o.have_p = true; }
        else if (k == "format") o.format = v;
        else if (k == "out") o.out = v;
        else if (k == "state_kind") o.state_kind = v;
        else if (k == "state_index") o.state_index = parse_int(v, k);
        else if (k == "state_sign") o.state_sign = parse_int(v, k);
        else if (k == "state_N") o.state_N = parse_int(v, k);
        else throw ConfigError("unknown config key: " + k);
    }
}

// ---------------------------------------------------------------------------
// Output helpers.

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << body;
}

void emit(const Options& o, const std::string& csv, const json& j) {
    if (o.out.empty()) return;
    if (o.format == "csv") write_file(o.out, csv);
    else write_file(o.out, j.dump(2) + "\n");
}

std::string interval_str(double lo, double hi, bool open) {
    const char* l = open ? "(" : "[";
    const char* r = open ? ")" : "]";
    return std::string(l) + fmt(lo) + ", " + fmt(hi) + r;
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_hill(const Options& o) {
    Potential p = o.potential();
    BandStructure bs = band_structure(p, o.window_lo, o.window_hi, o.tol);

    std::printf("potential: %s\n", p.describe().c_str());
    std::printf("window: %s\n", interval_str(o.window_lo, o.window_hi, false).c_str());
    std::printf("bands (%zu):\n", bs.bands.size());
    for (std::size_t i = 0; i < bs.bands.size(); ++i) {
        const Band& b = bs.bands[i];
        std::printf("  band %zu: %s%s\n", i, interval_str(b.lo, b.hi, false).c_str(),
                    b.clipped() ? "  [clipped by window]" : "");
    }
    std::printf("gaps (%zu):\n", bs.gaps.size());
    for (std::size_t i = 0; i < bs.gaps.size(); ++i) {
        const Gap& g = bs.gaps[i];
        if (g.closed)
            std::printf("  gap %zu: closed at %s\n", i, fmt(g.lo).c_str());
        else
            std::printf("  gap %zu: %s  length %s\n", i,
                        interval_str(g.lo, g.hi, true).c_str(),
                        fmt(g.length()).c_str());
    }
    auto print_list = [](const char* label, const std::vector<double>& v) {
        std::printf("%s (%zu):", label, v.size());
        for (double x : v) std::printf(" %s", fmt(x).c_str());
        std::printf("\n");
    };
    print_list("dirichlet eigenvalues", bs.dirichlet_eigenvalues);
    print_list("periodic eigenvalues", bs.periodic_eigenvalues);
    print_list("antiperiodic eigenvalues", bs.antiperiodic_eigenvalues);

    std::string csv = "type,index,lo,hi,closed\n";
    json j;
    j["potential"] = p.describe();
    j["window"] = {o.window_lo, o.window_hi};
    j["bands"] = json::array();
    j["gaps"] = json::array();
    for (std::size_t i = 0; i < bs.bands.size(); ++i) {
        const Band& b = bs.bands[i];
        csv += "band," + std::to_string(i) + "," + fmt(b.lo) + "," + fmt(b.hi) + ",\n";
        j["bands"].push_back({{"index", i}, {"lo", b.lo}, {"hi", b.hi},
                              {"clipped", b.clipped()}});
    }
    for (std::size_t i = 0; i < bs.gaps.size(); ++i) {
        const Gap& g = bs.gaps[i];
        csv += "gap," + std::to_string(i) + "," + fmt(g.lo) + "," + fmt(g.hi) +
               "," + (g.closed ? "1" : "0") + "\n";
        j["gaps"].push_back({{"index", i}, {"lo", g.lo}, {"hi", g.hi},
                             {"closed", g.closed}});
    }
    auto add_points = [&](const char* type, const std::vector<double>& v,
                          const char* jkey) {
        j[jkey] = json::array();
        for (std::size_t i = 0; i < v.size(); ++i) {
            csv += std::string(type) + "," + std::to_string(i) + "," +
                   fmt(v[i]) + ",,\n";
            j[jkey].push_back(v[i]);
        }
    };
    add_points("dirichlet", bs.dirichlet_eigenvalues, "dirichlet");
    add_points("periodic", bs.periodic_eigenvalues, "periodic");
    add_points("antiperiodic", bs.antiperiodic_eigenvalues, "antiperiodic");
    emit(o, csv, j);
    return kExitOk;
}

int cmd_graphene(const Options& o) {
    Potential p = o.potential();
    GrapheneSpectrum gs = graphene_spectrum(p, o.window_lo, o.window_hi, o.tol);

    std::printf("potential: %s\n", p.describe().c_str());
    std::printf("ac spectrum (%zu intervals):\n", gs.ac_bands.size());
    for (auto [lo, hi] : gs.ac_bands)
        std::printf("  %s\n", interval_str(lo, hi, false).c_str());
    std::printf("point spectrum (%zu, infinite multiplicity):\n",
                gs.point_spectrum.size());
    for (double d : gs.point_spectrum)
        std::printf("  %s  [flat branch]\n", fmt(d).c_str());
    std::printf("dirac levels (%zu):\n", gs.dirac_levels.size());
    for (double d : gs.dirac_levels) std::printf("  %s\n", fmt(d).c_str());

    if (o.surface > 0) {
        std::vector<int> bands = o.bands;
        if (bands.empty()) {
            for (int k = 0; k < static_cast<int>(gs.band_structure.bands.size()); ++k)
                if (!gs.band_structure.bands[static_cast<std::size_t>(k)].clipped())
                    bands.push_back(k);
        }
        auto surf = dispersion_surface(gs.band_structure, o.surface, bands);
        std::printf("surface: %d x %d grid, %zu points\n", o.surface, o.surface,
                    surf.size());
        std::string csv = "theta1,theta2,band,sign,lambda\n";
        json rows = json::array();
        for (const auto& sp : surf) {
            csv += fmt(sp.theta1) + "," + fmt(sp.theta2) + "," +
                   std::to_string(sp.band) + "," + std::to_string(sp.sign) +
                   "," + fmt(sp.lambda) + "\n";
            rows.push_back({{"theta1", sp.theta1}, {"theta2", sp.theta2},
                            {"band", sp.band}, {"sign", sp.sign},
                            {"lambda", sp.lambda}});
        }
        emit(o, csv, rows);
        return kExitOk;
    }

    std::string csv = "type,index,lo,hi\n";
    json j;
    j["potential"] = p.describe();
    j["ac_bands"] = json::array();
    for (std::size_t i = 0; i < gs.ac_bands.size(); ++i) {
        auto [lo, hi] = gs.ac_bands[i];
        csv += "ac_band," + std::to_string(i) + "," + fmt(lo) + "," + fmt(hi) + "\n";
        j["ac_bands"].push_back({{"lo", lo}, {"hi", hi}});
    }
    j["point_spectrum"] = gs.point_spectrum;
    j["dirac_levels"] = gs.dirac_levels;
    for (std::size_t i = 0; i < gs.point_spectrum.size(); ++i)
        csv += "flat_branch," + std::to_string(i) + "," +
               fmt(gs.point_spectrum[i]) + ",\n";
    for (std::size_t i = 0; i < gs.dirac_levels.size(); ++i)
        csv += "dirac," + std::to_string(i) + "," + fmt(gs.dirac_levels[i]) + ",\n";
    emit(o, csv, j);
    return kExitOk;
}

const char* family_name(TubeFamily f) {
    switch (f) {
        case TubeFamily::Zigzag: return "zig-zag";
        case TubeFamily::Armchair: return "armchair";
        default: return "chiral";
    }
}

int cmd_tube(const Options& o) {
    if (!o.have_p) throw ConfigError("tube: --p P1 P2 is required");
    Potential p = o.potential();
    TubeVector tv = classify(o.p1, o.p2);
    TubeSpectrum ts = tube_spectrum(tv, p, o.window_lo, o.window_hi, o.tol);

    std::printf("tube (%d, %d): %s, normal form (%d, %d), %s\n", tv.p1, tv.p2,
                family_name(tv.family), tv.normal_form.first,
                tv.normal_form.second, tv.metallic ? "metallic" : "semiconducting");
    std::printf("alpha = %s\n", fmt(ts.alpha).c_str());
    std::printf("ac spectrum (%zu intervals):\n", ts.ac_bands.size());
    for (auto [lo, hi] : ts.ac_bands)
        std::printf("  %s\n", interval_str(lo, hi, false).c_str());
    std::printf("tube gaps (%zu):\n", ts.tube_gaps.size());
    for (const auto& g : ts.tube_gaps)
        std::printf("  %s  in band %d\n", interval_str(g.lo, g.hi, true).c_str(),
                    g.band);
    std::printf("dirichlet point spectrum (%zu):\n",
                ts.point_spectrum_dirichlet.size());
    for (double d : ts.point_spectrum_dirichlet)
        std::printf("  %s\n", fmt(d).c_str());

    // Xi levels sit at ac band edges exactly when alpha = 1 (zig-zag N <= 2);
    // otherwise they are embedded strictly inside the ac spectrum.
    std::vector<std::string> xi_pos;
    for (double x : ts.point_spectrum_xi) {
        bool edge = false;
        for (auto [lo, hi] : ts.ac_bands)
            if (std::abs(x - lo) < 1e-8 || std::abs(x - hi) < 1e-8) edge = true;
        xi_pos.push_back(edge ? "edge" : "embedded");
    }
    std::printf("xi point spectrum (%zu):\n", ts.point_spectrum_xi.size());
    for (std::size_t i = 0; i < ts.point_spectrum_xi.size(); ++i)
        std::printf("  %s  [%s]\n", fmt(ts.point_spectrum_xi[i]).c_str(),
                    xi_pos[i].c_str());

    std::string csv = "type,index,lo,hi,annotation\n";
    json j;
    j["tube"] = {{"p1", tv.p1}, {"p2", tv.p2},
                 {"family", family_name(tv.family)},
                 {"normal_form", {tv.normal_form.first, tv.normal_form.second}},
                 {"metallic", tv.metallic}};
    j["alpha"] = ts.alpha;
    j["ac_bands"] = json::array();
    for (std::size_t i = 0; i < ts.ac_bands.size(); ++i) {
        auto [lo, hi] = ts.ac_bands[i];
        csv += "ac_band," + std::to_string(i) + "," + fmt(lo) + "," + fmt(hi) + ",\n";
        j["ac_bands"].push_back({{"lo", lo}, {"hi", hi}});
    }
    j["tube_gaps"] = json::array();
    for (std::size_t i = 0; i < ts.tube_gaps.size(); ++i) {
        const auto& g = ts.tube_gaps[i];
        csv += "tube_gap," + std::to_string(i) + "," + fmt(g.lo) + "," +
               fmt(g.hi) + ",band " + std::to_string(g.band) + "\n";
        j["tube_gaps"].push_back({{"lo", g.lo}, {"hi", g.hi}, {"band", g.band}});
    }
    j["dirichlet"] = ts.point_spectrum_dirichlet;
    for (std::size_t i = 0; i < ts.point_spectrum_dirichlet.size(); ++i)
        csv += "dirichlet," + std::to_string(i) + "," +
               fmt(ts.point_spectrum_dirichlet[i]) + ",,\n";
    j["xi"] = json::array();
    for (std::size_t i = 0; i < ts.point_spectrum_xi.size(); ++i) {
        csv += "xi," + std::to_string(i) + "," + fmt(ts.point_spectrum_xi[i]) +
               ",," + xi_pos[i] + "\n";
        j["xi"].push_back({{"lambda", ts.point_spectrum_xi[i]},
                           {"position", xi_pos[i]}});
    }
    emit(o, csv, j);
    return kExitOk;
}

int cmd_state(const Options& o) {
    Potential p = o.potential();
    BandStructure bs = band_structure(p, o.window_lo, o.window_hi, o.tol);

    GraphState st;
    if (o.state_kind == "three-leaf") {
        if (o.have_p) {
            TubeVector tv = classify(o.p1, o.p2);
            if (!tv.even_zigzag())
                throw ConfigError("Xi states require even zig-zag");
        }
        if (o.state_sign != 1 && o.state_sign != -1)
            throw ConfigError("state sign must be 1 or -1");
        std::vector<double> levels;
        for (double x : xi_levels(bs).levels)
            if (monodromy(p, x, o.tol).eta * o.state_sign > 0.0)
                levels.push_back(x);
        if (o.state_index < 0 ||
            o.state_index >= static_cast<int>(levels.size()))
            throw ConfigError("xi index out of range (found " +
                              std::to_string(levels.size()) + " levels)");
        st = build_three_leaf(p, levels[static_cast<std::size_t>(o.state_index)],
                              o.state_sign, o.tol);
    } else {
        const auto& dir = bs.dirichlet_eigenvalues;
        if (o.state_index < 0 || o.state_index >= static_cast<int>(dir.size()))
            throw ConfigError("dirichlet index out of range (found " +
                              std::to_string(dir.size()) + " eigenvalues)");
        double lam = dir[static_cast<std::size_t>(o.state_index)];
        if (o.state_kind == "hexagon")
            st = build_hexagon_loop(p, lam, o.tol);
        else if (o.state_kind == "tube-loop")
            st = build_tube_loop(p, lam, o.state_N, o.tol);
        else if (o.state_kind == "dumbbell-bead")
            st = build_dumbbell(p, lam, false, o.tol);
        else if (o.state_kind == "dumbbell-full")
            st = build_dumbbell(p, lam, true, o.tol);
        else
            throw ConfigError("unknown state kind: " + o.state_kind);
    }

    VerifyReport rep = verify_state(st, p, 1e-7);
    std::printf("state: %s at lambda = %s\n", o.state_kind.c_str(),
                fmt(st.lambda).c_str());
    std::printf("vertex residual: %s\n", fmt(rep.vertex_residual).c_str());
    std::printf("flux residual:   %s\n", fmt(rep.flux_residual).c_str());
    std::printf("eigen residual:  %s\n", fmt(rep.eigen_residual).c_str());
    std::printf("verification: %s\n", rep.pass ? "pass" : "FAIL");

    std::string csv = "edge_id,x,value\n";
    json j;
    j["kind"] = o.state_kind;
    j["lambda"] = st.lambda;
    j["verification"] = {{"vertex_residual", rep.vertex_residual},
                         {"flux_residual", rep.flux_residual},
                         {"eigen_residual", rep.eigen_residual},
                         {"pass", rep.pass}};
    j["edges"] = json::array();
    for (const auto& e : st.edges) {
        json samples = json::array();
        const auto n = e.samples.size();
        for (std::size_t i = 0; i < n; ++i) {
            double x = static_cast<double>(i) / static_cast<double>(n - 1);
            csv += e.edge_id + "," + fmt(x) + "," + fmt(e.samples[i]) + "\n";
            samples.push_back(e.samples[i]);
        }
        j["edges"].push_back({{"edge_id", e.edge_id}, {"samples", samples},
                              {"d0", e.d0}, {"d1", e.d1}});
    }
    emit(o, csv, j);
    if (!rep.pass) {
        std::fprintf(stderr, "state verification failed\n");
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_selfcheck(const Options&) {
    // Free-potential closed forms exercised end to end.
    Potential p = Potential::zero();
    bool all = true;
    auto check = [&](const char* name, bool ok) {
        std::printf("%-40s %s\n", name, ok ? "ok" : "FAIL");
        all = all && ok;
    };

    double dmax = 0.0;
    for (int i = 0; i <= 400; ++i) {
        double lam = -1.0 + 401.0 * i / 400.0;
        double ref = lam >= 0.0 ? 2.0 * std::cos(std::sqrt(lam))
                                : 2.0 * std::cosh(std::sqrt(-lam));
        dmax = std::max(dmax, std::abs(discriminant(p, lam) - ref));
    }
    check("discriminant vs 2 cos sqrt(lambda)", dmax < 1e-9);

    BandStructure bs = band_structure(p, -1.0, 100.0);
    bool bands_ok = bs.bands.size() == 4;
    for (std::size_t k = 0; k + 1 < bs.bands.size() && bands_ok; ++k)
        bands_ok = std::abs(bs.bands[k].hi - bs.bands[k + 1].lo) < 1e-8;
    check("free bands tile [0, window]", bands_ok);

    bool dir_ok = bs.dirichlet_eigenvalues.size() == 3;
    for (std::size_t k = 0; k < bs.dirichlet_eigenvalues.size() && dir_ok; ++k) {
        double ref = std::pow(M_PI * (k + 1), 2);
        dir_ok = std::abs(bs.dirichlet_eigenvalues[k] - ref) < 1e-8;
    }
    check("dirichlet spectrum {pi^2 k^2}", dir_ok);

    bool alpha_ok = true;
    for (int N = 1; N <= 12; ++N) {
        TubeVector tv = classify(0, N);
        alpha_ok = alpha_ok &&
                   std::abs(alpha(tv) - alpha_minimized(tv)) < 1e-8;
    }
    check("alpha formula vs minimization", alpha_ok);

    double lam_xi = std::pow(std::acos(1.0 / 3.0), 2);
    bool leaf_ok = false;
    try {
        auto st = build_three_leaf(p, lam_xi, +1);
        leaf_ok = verify_state(st, p, 1e-7).pass;
    } catch (const std::exception&) {
    }
    check("three-leaf state at eta = 1/3", leaf_ok);

    std::printf("selfcheck: %s\n", all ? "pass" : "FAIL");
    return all ? kExitOk : kExitNumeric;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of periodic Schrodinger operators on graphene and "
                 "carbon nanotube graphs"};
    app.require_subcommand(1);

    Options opt;
    std::string config_path, potential_path;
    std::vector<double> window_flag;
    std::vector<int> p_flag;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key=value run configuration");
        sub->add_option("--potential-file", potential_path,
                        "potential specification (key=value)");
        sub->add_option("--window", window_flag, "spectral window LO HI")
            ->expected(2);
        sub->add_option("--tol", opt.tol, "root/integration tolerance");
        sub->add_option("--format", opt.format, "output format: csv or json");
        sub->add_option("--out", opt.out, "output file path");
    };

    CLI::App* hill = app.add_subcommand("hill", "Hill bands, gaps, eigenvalues");
    add_common(hill);

    CLI::App* graphene = app.add_subcommand("graphene", "graphene spectrum");
    add_common(graphene);
    graphene->add_option("--surface", opt.surface, "dispersion surface grid size");
    graphene->add_option("--bands", opt.bands, "band indices for the surface");

    CLI::App* tube = app.add_subcommand("tube", "nanotube spectrum");
    add_common(tube);
    tube->add_option("--p", p_flag, "tube vector P1 P2")->expected(2);

    CLI::App* state = app.add_subcommand("state", "compactly supported eigenstate");
    add_common(state);
    state->add_option("--kind", opt.state_kind,
                      "hexagon | tube-loop | dumbbell-bead | dumbbell-full | three-leaf");
    state->add_option("--index", opt.state_index, "eigenvalue index");
    state->add_option("--sign", opt.state_sign, "three-leaf sign (+1 or -1)");
    state->add_option("--N", opt.state_N, "tube circumference for tube-loop");
    state->add_option("--p", p_flag, "tube vector (three-leaf validity check)")
        ->expected(2);

    CLI::App* selfcheck =
        app.add_subcommand("selfcheck", "free-potential oracle suite");
    (void)selfcheck;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        // Config file first, then flag overrides on top.
        Options merged;
        if (!config_path.empty()) apply_config(merged, load_kv(config_path));
        if (!potential_path.empty())
            for (const auto& [k, v] : load_kv(potential_path)) {
                bool known = std::find_if(std::begin(kPotentialKeys),
                                          std::end(kPotentialKeys),
                                          [&, key = k](const char* pk) {
                                              return key == pk;
                                          }) != std::end(kPotentialKeys);
                if (!known) throw ConfigError("unknown potential key: " + k);
                merged.pot_kv[k] = v;
            }
        CLI::App* sub = app.get_subcommands().front();
        auto took = [&](const char* name) {
            const CLI::Option* o = sub->get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (took("--window")) {
            merged.window_lo = window_flag[0];
            merged.window_hi = window_flag[1];
        }
        if (took("--tol")) merged.tol = opt.tol;
        if (took("--format")) merged.format = opt.format;
        if (took("--out")) merged.out = opt.out;
        if (sub == graphene) {
            if (took("--surface")) merged.surface = opt.surface;
            if (took("--bands")) merged.bands = opt.bands;
        }
        if (!p_flag.empty()) {
            merged.p1 = p_flag[0];
            merged.p2 = p_flag[1];
            merged.have_p = true;
        }
        if (sub == state) {
            if (took("--kind")) merged.state_kind = opt.state_kind;
            if (took("--index")) merged.state_index = opt.state_index;
            if (took("--sign")) merged.state_sign = opt.state_sign;
            if (took("--N")) merged.state_N = opt.state_N;
        }
        merged.validate();

        if (sub == hill) return cmd_hill(merged);
        if (sub == graphene) return cmd_graphene(merged);
        if (sub == tube) return cmd_tube(merged);
        if (sub == state) return cmd_state(merged);
        return cmd_selfcheck(merged);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s (lambda = %s)\n", e.what(),
                     fmt(e.lambda()).c_str());
        return kExitNumeric;
    } catch (const ResolutionError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    }
}
