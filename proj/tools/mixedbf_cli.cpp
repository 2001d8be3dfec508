#include "CLI11.hpp"
#include "json.hpp"

#include "mixedbf/boundary.hpp"
#include "mixedbf/defcomplex.hpp"
#include "mixedbf/graphs.hpp"
#include "mixedbf/manifest.hpp"
#include "mixedbf/quadrature.hpp"
#include "mixedbf/verify.hpp"
#include "mixedbf/weights.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace mixedbf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
    double epsilon_min = 1e-4;
    double epsilon_max = 1e-1;
    double L = 1.0;
    int grid = 8;
    double tol = 1e-6;
    uint64_t seed = 1;
    std::string out;
    std::string config;
    int wheel = 3;
    int edge = 0;
    std::string graph_file;
    std::string algebra_file;
    std::string builtin = "sl2";
    int cubic = 2, cs = 0, quartic = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--epsilon-min", o.epsilon_min, "smallest cutoff scale");
    cmd->add_option("--epsilon-max", o.epsilon_max, "largest cutoff scale");
    cmd->add_option("--L", o.L, "infrared scale");
    cmd->add_option("--grid", o.grid, "quadrature points per panel and dimension");
    cmd->add_option("--tol", o.tol, "relative quadrature tolerance");
    cmd->add_option("--seed", o.seed, "seed for randomized identity checks");
    cmd->add_option("--out", o.out, "output path (stdout when omitted)");
    cmd->add_option("--config", o.config, "key=value or JSON configuration file");
}

// configuration file: JSON object or flat key = value lines ('#' comments,
// [section] headers ignored). Values override the defaults but not explicit
// command-line flags (CLI11 handles precedence by parse order here: config is
// applied first through this loader, flags afterwards).
void load_config(const std::string& path, CommonOptions& o) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto assign = [&](const std::string& key, const std::string& value) {
        auto num = [&] { return std::stod(value); };
        if (key == "epsilon_min" || key == "epsilon-min") o.epsilon_min = num();
        else if (key == "epsilon_max" || key == "epsilon-max") o.epsilon_max = num();
        else if (key == "L") o.L = num();
        else if (key == "grid") o.grid = int(num());
        else if (key == "tol") o.tol = num();
        else if (key == "seed") o.seed = uint64_t(num());
        else if (key == "out") o.out = value;
        else if (key == "wheel") o.wheel = int(num());
        else if (key == "edge") o.edge = int(num());
        else if (key == "graph") o.graph_file = value;
        else if (key == "algebra") o.algebra_file = value;
        else if (key == "builtin") o.builtin = value;
        else if (key == "cubic") o.cubic = int(num());
        else if (key == "cs") o.cs = int(num());
        else if (key == "quartic") o.quartic = int(num());
        else throw CLI::ValidationError("--config", "unknown key " + key);
    };
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        auto j = nlohmann::json::parse(text);
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_string())
                assign(it.key(), it.value().get<std::string>());
            else
                assign(it.key(), nlohmann::json(it.value()).dump());
        }
        return;
    }
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string t = trim(line);
        if (t.empty() || t.front() == '[') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config",
                                       "line " + std::to_string(lineno) + ": expected key = value");
        assign(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

std::vector<double> epsilon_ladder(const CommonOptions& o) {
    std::vector<double> eps;
    for (double e = o.epsilon_max; e >= o.epsilon_min * (1 - 1e-12); e /= 10.0) eps.push_back(e);
    if (eps.empty()) eps.push_back(o.epsilon_min);
    return eps;
}

weights::WeightOptions weight_options(const CommonOptions& o) {
    weights::WeightOptions opt;
    opt.box.order = o.grid;
    opt.box.rel_tol = o.tol;
    opt.box.threads = 0;
    return opt;
}

std::ostream& open_output(const CommonOptions& o, std::ofstream& file) {
    if (o.out.empty()) return std::cout;
    file.open(o.out);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + o.out);
    return file;
}

graphs::ChiralGraph sweep_graph(const CommonOptions& o) {
    if (!o.graph_file.empty()) {
        std::ifstream in(o.graph_file);
        if (!in) throw CLI::ValidationError("--graph", "cannot open " + o.graph_file);
        return graphs::parse_graph(in);
    }
    return graphs::wheel(o.wheel);
}

void validate_scales(const CommonOptions& o) {
    if (!(o.tol > 0)) throw CLI::ValidationError("--tol", "tolerance must be positive");
    if (!(o.epsilon_min > 0 && o.epsilon_min < o.L))
        throw CLI::ValidationError("--epsilon-min", "need 0 < epsilon_min < L");
}

int cmd_verify(const CommonOptions& o) {
    verify::Options vo;
    vo.seed = o.seed;
    auto results = verify::run_symbolic_suite(vo);
    std::ofstream file;
    std::ostream& os = open_output(o, file);
    for (const auto& r : results) {
        os << (r.passed ? "[ok]  " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << "\n";
    }
    bool ok = verify::all_passed(results);
    os << (ok ? "verify: all identities hold\n" : "verify: FAILURES present\n");
    return ok ? kExitOk : kExitVerifyFailure;
}

int cmd_sweep(const CommonOptions& o, bool anomaly) {
    validate_scales(o);
    auto g = sweep_graph(o);
    auto opt = weight_options(o);
    int threads = quadrature::thread_count_from_env();
    auto phi = weights::default_wheel_input(int(g.vertices.size()), anomaly);
    auto rows = weights::epsilon_sweep(g, epsilon_ladder(o), o.L, phi, opt, anomaly, o.edge);
    std::ofstream file;
    std::ostream& os = open_output(o, file);
    os << "# manifest: " << RunManifest::from(opt, o.seed, threads).json() << "\n";
    os << "epsilon,L,graph_id,value,error_estimate\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.17g,%.17g\n", r.eps, r.L,
                      r.graph_id.c_str(), r.value, r.error_estimate);
        os << buf;
    }
    return kExitOk;
}

int cmd_boundary_level(const CommonOptions& o) {
    validate_scales(o);
    auto opt = weight_options(o);
    int threads = quadrature::thread_count_from_env();
    auto family = boundary::default_level_family();
    auto rep = boundary::extract_level(epsilon_ladder(o), o.L, family, opt);
    nlohmann::json j;
    j["manifest"] = nlohmann::json::parse(RunManifest::from(opt, o.seed, threads).json());
    j["c_an"] = rep.c_an;
    j["residual"] = rep.residual;
    j["relative_residual"] = rep.relative_residual;
    j["stderr"] = rep.stderr_c;
    j["L"] = o.L;
    j["eps_sequence"] = rep.eps_sequence;
    j["levels"] = rep.levels;
    j["extrapolated_weights"] = rep.extrapolated_weights;
    j["sweeps"] = rep.sweep_values;
    std::ofstream file;
    std::ostream& os = open_output(o, file);
    os << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_cohomology(const CommonOptions& o) {
    defcomplex::FinDimLieAlgebra g;
    if (!o.algebra_file.empty()) {
        std::ifstream in(o.algebra_file);
        if (!in) throw CLI::ValidationError("--algebra", "cannot open " + o.algebra_file);
        g = defcomplex::parse_algebra(in);
    } else if (o.builtin == "sl2") {
        g = defcomplex::FinDimLieAlgebra::sl2();
    } else if (o.builtin == "sl2+sl2") {
        g = defcomplex::FinDimLieAlgebra::direct_sum(defcomplex::FinDimLieAlgebra::sl2(),
                                                     defcomplex::FinDimLieAlgebra::sl2());
    } else if (o.builtin == "abelian1") {
        g = defcomplex::FinDimLieAlgebra::abelian(1);
    } else {
        throw CLI::ValidationError("--builtin", "unknown algebra " + o.builtin);
    }
    std::ofstream file;
    std::ostream& os = open_output(o, file);
    os << "algebra: " << (g.name.empty() ? "(unnamed)" : g.name) << "  dim " << g.dim << "\n";
    os << "semisimple: " << (g.is_semisimple() ? "yes" : "no") << "\n";
    auto show = [&](const std::string& label, const std::vector<int>& dims, int from) {
        os << label << ":";
        for (size_t i = 0; i < dims.size(); ++i)
            os << "  H^" << (from + int(i)) << "=" << dims[i];
        os << "\n";
    };
    show("trivial coefficients", defcomplex::CEComplex(g, defcomplex::Module::trivial).cohomology_dims(), 0);
    show("adjoint coefficients", defcomplex::CEComplex(g, defcomplex::Module::adjoint).cohomology_dims(), 0);
    defcomplex::ComplexA A(g);
    show("two-term total complex", A.cohomology_dims(), A.min_degree());
    if (g.is_semisimple())
        os << "weight-one deformations trivial: "
           << (defcomplex::weight_one_triviality(g) ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_enumerate(const CommonOptions& o) {
    std::vector<graphs::ChiralVertex> multiset;
    for (int i = 0; i < o.cubic; ++i) multiset.push_back(graphs::ChiralVertex(2, 1, {}, "cubic"));
    for (int i = 0; i < o.cs; ++i) multiset.push_back(graphs::ChiralVertex(2, 0, {1, 0}, "cs"));
    for (int i = 0; i < o.quartic; ++i) multiset.push_back(graphs::ChiralVertex(3, 1, {}, "quartic"));
    auto found = graphs::enumerate_graphs(multiset);
    std::ofstream file;
    std::ostream& os = open_output(o, file);
    os << "# " << found.size() << " admissible connected graphs (up to isomorphism)\n";
    for (size_t i = 0; i < found.size(); ++i) {
        os << "# graph " << i << ": " << graphs::to_string(graphs::classify(found[i]))
           << ", betti " << found[i].betti() << "\n";
        os << graphs::format_graph(found[i]) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed BF / Chern-Simons one-loop quantization toolkit"};
    app.require_subcommand(1);

    CommonOptions o;
    auto* verify_cmd = app.add_subcommand("verify", "run the exact symbolic identity suite");
    add_common(verify_cmd, o);
    auto* sweep_cmd = app.add_subcommand("sweep", "bulk wheel weight cutoff sweep (CSV)");
    add_common(sweep_cmd, o);
    sweep_cmd->add_option("--wheel", o.wheel, "number of wheel vertices");
    sweep_cmd->add_option("--graph", o.graph_file, "graph description file");
    auto* anomaly_cmd = app.add_subcommand("anomaly", "anomaly weight cutoff sweep (CSV)");
    add_common(anomaly_cmd, o);
    anomaly_cmd->add_option("--wheel", o.wheel, "number of wheel vertices");
    anomaly_cmd->add_option("--graph", o.graph_file, "graph description file");
    anomaly_cmd->add_option("--edge", o.edge, "distinguished edge (cycle position)");
    auto* level_cmd = app.add_subcommand("boundary-level", "two-vertex boundary level fit (JSON)");
    add_common(level_cmd, o);
    auto* coh_cmd = app.add_subcommand("cohomology", "deformation complex dimensions");
    add_common(coh_cmd, o);
    coh_cmd->add_option("--algebra", o.algebra_file, "Lie algebra description file");
    coh_cmd->add_option("--builtin", o.builtin, "sl2, sl2+sl2 or abelian1");
    auto* enum_cmd = app.add_subcommand("enumerate", "admissible connected graphs of a multiset");
    add_common(enum_cmd, o);
    enum_cmd->add_option("--cubic", o.cubic, "number of cubic weight-one vertices");
    enum_cmd->add_option("--cs", o.cs, "number of bivalent weight-zero vertices");
    enum_cmd->add_option("--quartic", o.quartic, "number of quartic weight-one vertices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!o.config.empty()) {
            CommonOptions defaults;
            CommonOptions from_file = o;
            load_config(o.config, from_file);
            // command line wins where it differs from the defaults
            auto pick = [](auto cli_val, auto def_val, auto cfg_val) {
                return cli_val != def_val ? cli_val : cfg_val;
            };
            CommonOptions merged = from_file;
            merged.epsilon_min = pick(o.epsilon_min, defaults.epsilon_min, from_file.epsilon_min);
            merged.epsilon_max = pick(o.epsilon_max, defaults.epsilon_max, from_file.epsilon_max);
            merged.L = pick(o.L, defaults.L, from_file.L);
            merged.grid = pick(o.grid, defaults.grid, from_file.grid);
            merged.tol = pick(o.tol, defaults.tol, from_file.tol);
            merged.seed = pick(o.seed, defaults.seed, from_file.seed);
            merged.out = o.out.empty() ? from_file.out : o.out;
            merged.wheel = pick(o.wheel, defaults.wheel, from_file.wheel);
            merged.edge = pick(o.edge, defaults.edge, from_file.edge);
            o = merged;
        }
        if (verify_cmd->parsed()) return cmd_verify(o);
        if (sweep_cmd->parsed()) return cmd_sweep(o, false);
        if (anomaly_cmd->parsed()) return cmd_sweep(o, true);
        if (level_cmd->parsed()) return cmd_boundary_level(o);
        if (coh_cmd->parsed()) return cmd_cohomology(o);
        if (enum_cmd->parsed()) return cmd_enumerate(o);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const graphs::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const quadrature::QuadratureError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
