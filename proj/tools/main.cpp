// fmdkit command line: decompose signals/images into energy-preserving
// components, generate spiral-of-Theodorus paths, and probe decomposition
// systems for linearity and shift invariance.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "json.hpp"

#include "fmdkit/epcheck.hpp"
#include "fmdkit/fixtures.hpp"
#include "fmdkit/fmd.hpp"
#include "fmdkit/io.hpp"
#include "fmdkit/spiral.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

struct DecomposeOpts {
    std::string input;
    std::string format = "csv1d";
    int algorithm = 2;
    std::string filter = "gaussian";
    std::size_t stages = 0;
    double sigma0 = 0.0;  // 0 = derive from input shape
    std::vector<double> cutoffs;
    std::vector<std::size_t> windows;
    std::string out_dir;
    std::string report_path;
};

struct SpiralOpts {
    std::size_t dims = 2;
    std::size_t steps = 0;
    double tilt_deg = -0.25;
    std::size_t tilt_step = 18;
    std::string steering = "canonical";
    std::uint64_t seed = 0;
    std::string svg_path;
    std::string csv_path;
};

struct ProbeOpts {
    std::string system = "alg2";
    std::string filter = "gaussian";
    std::size_t stages = 6;
    double sigma0 = 0.0;
    std::vector<double> cutoffs;
    std::vector<std::size_t> windows;
    std::string property = "additivity";
    std::string fixture = "twotone";
    std::uint64_t seed = 1;
    std::size_t samples = 1024;
    double scale = 2.0;
    long tau = 17;
};

fmd::FilterSpec make_filter(const std::string& kind, std::size_t stages, double sigma0,
                            const std::vector<double>& cutoffs,
                            const std::vector<std::size_t>& windows, const fmd::Shape& shape) {
    if (kind == "gaussian") {
        const double s0 = sigma0 > 0.0 ? sigma0 : fmd::default_sigma0(shape);
        return fmd::FilterSpec::gaussian_halving(stages, s0);
    }
    if (kind == "ideal") {
        if (cutoffs.size() != stages)
            throw std::invalid_argument("--cutoffs must list one cutoff per stage");
        return fmd::FilterSpec::ideal(cutoffs);
    }
    if (kind == "movavg") {
        if (windows.size() != stages)
            throw std::invalid_argument("--windows must list one window per stage");
        return fmd::FilterSpec::moving_average(windows);
    }
    throw std::invalid_argument("unknown filter '" + kind + "' (expected gaussian|ideal|movavg)");
}

fmd::Algorithm algorithm_from_id(int id) {
    switch (id) {
        case 1: return fmd::Algorithm::plain;
        case 2: return fmd::Algorithm::linoep_residue_side;
        case 3: return fmd::Algorithm::linoep_filter_side;
    }
    throw std::invalid_argument("--algorithm must be 1, 2 or 3");
}

std::string component_filename(std::size_t index, std::size_t count, const char* ext) {
    const int width = count >= 100 ? 3 : 2;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "comp_%0*zu.%s", width, index, ext);
    return buf;
}

ojson shape_json(const fmd::Shape& s) {
    if (s.ndim == 1) return ojson::array({s.cols});
    return ojson::array({s.rows, s.cols});
}

// worst normalized |<c_i, sum_{l>i} c_l>| and worst normalized off-diagonal
// pair, straight from the component list / gram matrix
std::pair<double, double> orthogonality_summary(const fmd::DecompositionResult& res) {
    const auto& cs = res.components;
    double tele = 0.0;
    if (cs.size() >= 2) {
        fmd::Signal tail = cs.back();
        for (std::size_t i = cs.size() - 1; i-- > 0;) {
            const double denom = fmd::norm(cs[i]) * fmd::norm(tail);
            if (denom > 0.0)
                tele = std::max(tele, std::abs(fmd::inner_product(cs[i], tail)) / denom);
            if (i > 0) tail = tail + cs[i];
        }
    }
    double pair = 0.0;
    for (std::size_t i = 0; i < res.gram.size(); ++i)
        for (std::size_t j = i + 1; j < res.gram.size(); ++j) {
            const double denom = std::sqrt(res.gram[i][i].real() * res.gram[j][j].real());
            if (denom > 0.0) pair = std::max(pair, std::abs(res.gram[i][j]) / denom);
        }
    return {tele, pair};
}

int run_decompose(const DecomposeOpts& opt) {
    const fmd::Signal x = fmd::io::read_signal(opt.input, fmd::io::parse_format(opt.format));
    const fmd::Algorithm alg = algorithm_from_id(opt.algorithm);
    const fmd::FilterSpec filter =
        make_filter(opt.filter, opt.stages, opt.sigma0, opt.cutoffs, opt.windows, x.shape());

    const auto t0 = std::chrono::steady_clock::now();
    const fmd::DecompositionResult res = fmd::decompose(x, alg, filter, opt.stages);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);

    ojson comps = ojson::array();
    double reread_err = 0.0;
    for (std::size_t i = 0; i < res.components.size(); ++i) {
        const fmd::Signal& c = res.components[i];
        ojson entry;
        entry["index"] = i + 1;
        const std::string csv_name = component_filename(i + 1, res.components.size(), "csv");
        fmd::io::write_csv_matrix(c, out_dir / csv_name);
        entry["file"] = csv_name;
        if (c.ndim() == 2) {
            const std::string pgm_name = component_filename(i + 1, res.components.size(), "pgm");
            const fmd::io::PgmScale scale = fmd::io::write_signal_pgm(c, out_dir / pgm_name);
            entry["pgm"] = pgm_name;
            entry["display_min"] = scale.min;
            entry["display_scale"] = scale.scale;
        }
        entry["energy"] = res.ledger.component_energies[i];
        // integrity: the emitted exact CSV must reproduce the ledger energy
        const double re_energy = fmd::energy(fmd::io::read_csv_matrix(out_dir / csv_name));
        const double denom = std::max(res.ledger.component_energies[i], 1e-300);
        reread_err = std::max(reread_err,
                              std::abs(re_energy - res.ledger.component_energies[i]) / denom);
        comps.push_back(std::move(entry));
    }

    // energy table, one row per component with the running sum
    {
        std::ofstream table(out_dir / "energy_table.csv", std::ios::binary);
        if (!table) throw std::runtime_error(opt.out_dir + ": cannot write energy_table.csv");
        table << "i,E_i,sum_E_i,% error\n";
        fmd::detail::CompensatedSum running;
        for (std::size_t i = 0; i < res.ledger.component_energies.size(); ++i) {
            running.add(res.ledger.component_energies[i]);
            const double err = res.ledger.total_energy > 0.0
                                   ? (res.ledger.total_energy - running.value()) /
                                         res.ledger.total_energy * 100.0
                                   : 0.0;
            table << (i + 1) << ',' << fmd::io::format_double(res.ledger.component_energies[i])
                  << ',' << fmd::io::format_double(running.value()) << ','
                  << fmd::io::format_double(err) << '\n';
        }
    }

    const fmd::SequenceVerdict verdict = fmd::verify_sequence(res.components);
    const auto [tele, pairwise] = orthogonality_summary(res);

    ojson report;
    report["schema"] = 1;
    report["kind"] = "decompose";
    report["input"] = {{"path", opt.input},
                       {"format", opt.format},
                       {"shape", shape_json(x.shape())},
                       {"energy", res.ledger.total_energy}};
    report["algorithm"] = {{"id", opt.algorithm}, {"name", fmd::to_string(res.algorithm)}};
    report["filter"] = {{"kind", opt.filter}, {"schedule", filter.schedule()}};
    report["stages"] = {{"requested", res.requested_stages}, {"completed", res.completed_stages}};
    report["components"] = std::move(comps);
    const double sum_energy = fmd::detail::compensated_sum(res.ledger.component_energies);
    report["ledger"] = {{"total_energy", res.ledger.total_energy},
                        {"component_energies", res.ledger.component_energies},
                        {"sum_component_energies", sum_energy},
                        {"pee_percent", res.ledger.pee_percent}};
    report["orthogonality"] = {{"max_telescoping_residual", tele},
                               {"max_pairwise_offdiagonal", pairwise}};
    report["verdict"] = {{"is_energy_preserving", verdict.is_energy_preserving},
                         {"classification", fmd::to_string(verdict.classification)},
                         {"energy_identity_gap", verdict.energy_identity_gap}};
    report["integrity"] = {{"reread_max_rel_energy_err", reread_err}};
    report["conventions"] = {{"filtering", "circular, zero-phase (DFT-domain)"},
                             {"time_shift", "circular"}};
    report["warnings"] = res.warnings;
    report["timing_ms"] = ms;

    const fs::path report_path =
        opt.report_path.empty() ? out_dir / "report.json" : fs::path(opt.report_path);
    {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw std::runtime_error(report_path.string() + ": cannot write report");
        out << report.dump(2) << '\n';
    }

    std::cout << "decomposed " << opt.input << " -> " << res.components.size()
              << " components in " << opt.out_dir << " (pee = "
              << fmd::io::format_double(res.ledger.pee_percent) << " %, "
              << fmd::to_string(verdict.classification) << ")\n"
              << "report: " << report_path.string() << '\n';
    return kExitOk;
}

int run_spiral(const SpiralOpts& opt) {
    if (opt.svg_path.empty() && opt.csv_path.empty())
        throw std::invalid_argument("spiral: need at least one of --svg/--csv");

    const fmd::SpiralPath path = [&] {
        const double tilt = opt.tilt_deg * std::numbers::pi / 180.0;
        if (opt.dims == 2) return fmd::theodorus_2d(opt.steps);
        if (opt.dims == 3) return fmd::theodorus_3d(opt.steps, tilt, opt.tilt_step);
        const fmd::Steering rule =
            opt.steering == "random" ? fmd::Steering::random_seeded : fmd::Steering::canonical;
        return fmd::theodorus_nd(opt.steps, opt.dims, rule, opt.seed);
    }();

    for (const std::string& w : path.warnings) std::cerr << "warning: " << w << '\n';
    if (!opt.csv_path.empty()) fmd::io::write_spiral_csv(path, opt.csv_path);
    if (!opt.svg_path.empty()) fmd::io::write_spiral_svg(path, opt.svg_path);

    double norm_sq = 0.0;
    for (double c : path.vertices.back()) norm_sq += c * c;
    std::cout << "spiral: dims=" << path.dim << " steps=" << path.step_count()
              << " |T_L|=" << fmd::io::format_double(std::sqrt(norm_sq)) << '\n';
    return kExitOk;
}

int run_probe(const ProbeOpts& opt) {
    const fmd::Shape fixture_shape{1, 1, opt.samples};
    const fmd::FilterSpec filter =
        make_filter(opt.filter, opt.stages, opt.sigma0, opt.cutoffs, opt.windows, fixture_shape);

    int alg_id = 0;
    if (opt.system == "alg1") alg_id = 1;
    else if (opt.system == "alg2") alg_id = 2;
    else if (opt.system == "alg3") alg_id = 3;
    else throw std::invalid_argument("--system must be alg1, alg2 or alg3");
    const fmd::Algorithm alg = algorithm_from_id(alg_id);
    const auto system = fmd::decomposition_system(alg, filter);
    const std::string name = opt.system + "+" + filter.describe();

    // probe inputs: a pair for additivity, their sum for the other properties
    fmd::Signal x1 = fmd::Signal::real_1d({0.0});
    fmd::Signal x2 = x1;
    if (opt.fixture == "twotone") {
        std::tie(x1, x2) = fmd::fixtures::twotone_pair(opt.samples);
    } else if (opt.fixture == "multitone") {
        const std::vector<fmd::Signal> parts = fmd::fixtures::multitone_components(opt.samples);
        fmd::Signal lo = parts[0], hi = parts[10];
        for (std::size_t l = 1; l < 10; ++l) lo = lo + parts[l];
        for (std::size_t l = 11; l < 20; ++l) hi = hi + parts[l];
        x1 = lo;
        x2 = hi;
    } else if (opt.fixture == "random") {
        x1 = fmd::fixtures::random_uniform_1d(opt.samples, opt.seed);
        x2 = fmd::fixtures::random_uniform_1d(opt.samples, opt.seed + 1);
    } else {
        throw std::invalid_argument("--fixture must be twotone, multitone or random");
    }

    fmd::ProbeReport probe;
    if (opt.property == "additivity") {
        probe = fmd::probe_additivity(system, name, x1, x2);
    } else if (opt.property == "homogeneity") {
        probe = fmd::probe_homogeneity(system, name, x1 + x2, opt.scale);
    } else if (opt.property == "shift") {
        probe = fmd::probe_time_invariance(system, name, x1 + x2, opt.tau);
    } else {
        throw std::invalid_argument("--property must be additivity, homogeneity or shift");
    }

    ojson out;
    out["schema"] = 1;
    out["kind"] = "probe";
    out["system"] = probe.system_name;
    out["property"] = fmd::to_string(probe.property);
    out["fixture"] = {{"name", opt.fixture}, {"samples", opt.samples}, {"seed", opt.seed}};
    if (opt.property == "homogeneity") out["scale"] = opt.scale;
    if (opt.property == "shift") out["tau"] = opt.tau;
    out["tolerance"] = probe.tolerance;
    out["max_violation"] = probe.max_violation;
    out["witness"] = probe.witness;
    out["passed"] = probe.passed;
    out["conventions"] = {{"time_shift", "circular"},
                          {"filtering", "circular, zero-phase (DFT-domain)"}};
    std::cout << out.dump(2) << '\n';
    return kExitOk;  // the verdict is data, not an error
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fmd-kit: iterative zero-phase filter decomposition with energy-preserving components"};
    app.require_subcommand(1);

    DecomposeOpts dec;
    CLI::App* cmd_dec = app.add_subcommand("decompose", "decompose a signal or image");
    cmd_dec->add_option("--input", dec.input, "input file")->required();
    cmd_dec->add_option("--format", dec.format, "input format: csv1d|pgm")
        ->check(CLI::IsMember({"csv1d", "pgm"}));
    cmd_dec->add_option("--algorithm", dec.algorithm, "1=plain, 2=residue-side, 3=filter-side")
        ->check(CLI::IsMember({1, 2, 3}));
    cmd_dec->add_option("--filter", dec.filter, "gaussian|ideal|movavg")
        ->check(CLI::IsMember({"gaussian", "ideal", "movavg"}));
    cmd_dec->add_option("--stages", dec.stages, "number of filter stages")->required();
    cmd_dec->add_option("--sigma0", dec.sigma0, "first gaussian sigma (default: maxdim/8, halving)");
    cmd_dec->add_option("--cutoffs", dec.cutoffs, "ideal cutoffs per stage")->delimiter(',');
    cmd_dec->add_option("--windows", dec.windows, "moving-average windows per stage")->delimiter(',');
    cmd_dec->add_option("--out", dec.out_dir, "output directory")->required();
    cmd_dec->add_option("--report", dec.report_path, "report path (default OUT/report.json)");

    SpiralOpts spi;
    CLI::App* cmd_spi = app.add_subcommand("spiral", "generate a discrete spiral of Theodorus");
    cmd_spi->add_option("--dims", spi.dims, "dimension (2, 3, or higher)")->required();
    cmd_spi->add_option("--steps", spi.steps, "number of unit steps")->required();
    cmd_spi->add_option("--tilt", spi.tilt_deg, "3D: out-of-plane tilt in degrees (default -0.25)");
    cmd_spi->add_option("--tilt-step", spi.tilt_step, "3D: vertex after which the tilt applies");
    cmd_spi->add_option("--steering", spi.steering, "dims>3: canonical|random")
        ->check(CLI::IsMember({"canonical", "random"}));
    cmd_spi->add_option("--seed", spi.seed, "seed for random steering");
    cmd_spi->add_option("--svg", spi.svg_path, "SVG output path");
    cmd_spi->add_option("--csv", spi.csv_path, "CSV output path");

    ProbeOpts prb;
    CLI::App* cmd_prb = app.add_subcommand("probe", "probe a decomposition system for LTI properties");
    cmd_prb->add_option("--system", prb.system, "alg1|alg2|alg3")
        ->check(CLI::IsMember({"alg1", "alg2", "alg3"}));
    cmd_prb->add_option("--filter", prb.filter, "gaussian|ideal|movavg")
        ->check(CLI::IsMember({"gaussian", "ideal", "movavg"}));
    cmd_prb->add_option("--stages", prb.stages, "number of filter stages (default 6)");
    cmd_prb->add_option("--sigma0", prb.sigma0, "first gaussian sigma (default: n/8, halving)");
    cmd_prb->add_option("--cutoffs", prb.cutoffs, "ideal cutoffs per stage")->delimiter(',');
    cmd_prb->add_option("--windows", prb.windows, "moving-average windows per stage")->delimiter(',');
    cmd_prb->add_option("--property", prb.property, "additivity|homogeneity|shift")
        ->check(CLI::IsMember({"additivity", "homogeneity", "shift"}));
    cmd_prb->add_option("--fixture", prb.fixture, "twotone|multitone|random")
        ->check(CLI::IsMember({"twotone", "multitone", "random"}));
    cmd_prb->add_option("--seed", prb.seed, "seed for the random fixture");
    cmd_prb->add_option("--samples", prb.samples, "fixture length (default 1024)");
    cmd_prb->add_option("--scale", prb.scale, "homogeneity scale factor (default 2)");
    cmd_prb->add_option("--tau", prb.tau, "shift amount in samples (default 17)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (app.got_subcommand(cmd_dec)) return run_decompose(dec);
        if (app.got_subcommand(cmd_spi)) return run_spiral(spi);
        if (app.got_subcommand(cmd_prb)) return run_probe(prb);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitValidation;
}
