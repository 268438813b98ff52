#include "zeno/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "zeno/io.hpp"
#include "zeno/models.hpp"

namespace zeno::cli {

namespace {

using core::ZenoPartition;
using models::ModelInstance;
using num::Matrix;

std::string fmt_short(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double get_param(const RunConfig& cfg, const std::string& key) {
    const auto it = cfg.parameters.find(key);
    if (it == cfg.parameters.end())
        throw ConfigError("missing model parameter '" + key + "'");
    return it->second;
}

// ------------------------------ Parsing -----------------------------------------

struct FlagSet {
    std::optional<double> omega, k, coupling, g, kappa, tau_z, gamma;
    std::optional<int> n_max;
};

struct Parser {
    CLI::App app{"zeno-cli: quantum Zeno subspace simulator"};
    RunConfig cfg;
    FlagSet flags;
    std::string model_str, format_str = "csv", fit_window_str;
    std::vector<CLI::Option*> samples_opts;

    Parser() {
        app.require_subcommand(1);
        app.set_config("--config", "",
                       "config file with one [subcommand] section; flags override it");

        add_command("partition", "emit the spectral projectors of the measurement operator");
        add_command("pulsed", "pulsed-measurement run: prepare, then N x [evolve t/N, project]");
        add_command("continuous", "evolve under H + K H_meas and record the trajectory");
        add_command("limit", "evolve under the strong-coupling limit generator H_diag + K H_meas");
        add_command("sweep", "convergence scan over K (coupling) or N (measurement steps)");
        add_command("darkspace", "orthonormal basis of the eta = 0 subspace of H_meas");
        add_command("decay", "decay-protection run: non-Hermitian trajectory plus rate fit");
    }

    void add_command(const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);

        sub->add_option("--model", model_str, "three-level | four-level | cavity | decay | custom-file")
            ->check(CLI::IsMember({"three-level", "four-level", "cavity", "decay", "custom-file"}));
        sub->add_option("--omega", flags.omega, "system drive Omega");
        sub->add_option("--k", flags.k, "internal coupling K of the four-level chain");
        sub->add_option("--coupling", flags.coupling, "measurement coupling strength");
        sub->add_option("--g", flags.g, "cavity: atom-mode coupling g");
        sub->add_option("--kappa", flags.kappa, "cavity: photon loss rate kappa");
        sub->add_option("--n-max", flags.n_max, "cavity: Fock truncation (env ZENO_NMAX_DEFAULT, else 3)");
        sub->add_option("--tau-z", flags.tau_z, "decay: Zeno time tau_Z");
        sub->add_option("--gamma", flags.gamma, "decay: rate gamma to the continuum");
        sub->add_option("--system-file", cfg.system_file, "custom-file: system operator file");
        sub->add_option("--meas-file", cfg.meas_file, "custom-file: measurement operator file");
        sub->add_option("--t-max", cfg.t_max, "run horizon");
        samples_opts.push_back(
            sub->add_option("--samples", cfg.samples, "number of emitted rows"));
        sub->add_option("--output", cfg.output_path, "output file path (omit for summary only)");
        sub->add_option("--format", format_str, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));

        if (name == "pulsed")
            sub->add_option("--steps", cfg.steps, "number of measurements N");
        if (name == "sweep") {
            sub->add_option("--param", cfg.sweep_param, "K | N")
                ->check(CLI::IsMember({"K", "N"}));
            sub->add_option("--values", cfg.sweep_values, "ascending scan values")
                ->delimiter(',');
        }
        if (name == "decay")
            sub->add_option("--fit-window", fit_window_str, "fit window as t0:t1");
    }
};

Command command_from_name(const std::string& name) {
    if (name == "partition") return Command::partition;
    if (name == "pulsed") return Command::pulsed;
    if (name == "continuous") return Command::continuous;
    if (name == "limit") return Command::limit;
    if (name == "sweep") return Command::sweep;
    if (name == "darkspace") return Command::darkspace;
    return Command::decay;
}

ModelKind model_from_name(const std::string& name) {
    if (name == "three-level") return ModelKind::three_level;
    if (name == "four-level") return ModelKind::four_level;
    if (name == "cavity") return ModelKind::cavity;
    if (name == "decay") return ModelKind::decay;
    return ModelKind::custom_file;
}

int env_n_max() {
    const char* env = std::getenv("ZENO_NMAX_DEFAULT");
    if (!env) return 3;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 2)
        throw ConfigError("ZENO_NMAX_DEFAULT must be an integer >= 2");
    return static_cast<int>(v);
}

void reject_foreign_flags(const RunConfig& cfg, const FlagSet& flags) {
    auto forbid = [&](bool set, const char* flag) {
        if (set)
            throw ConfigError(std::string(flag) + " is not a parameter of --model " +
                              model_name(cfg.model));
    };
    const bool cavity = cfg.model == ModelKind::cavity;
    const bool decay = cfg.model == ModelKind::decay;
    forbid(flags.g.has_value() && !cavity, "--g");
    forbid(flags.kappa.has_value() && !cavity, "--kappa");
    forbid(flags.n_max.has_value() && !cavity, "--n-max");
    forbid(flags.tau_z.has_value() && !decay, "--tau-z");
    forbid(flags.gamma.has_value() && !decay, "--gamma");
    forbid(flags.k.has_value() && cfg.model != ModelKind::four_level, "--k");
    forbid(flags.omega.has_value() && (cavity || decay || cfg.model == ModelKind::custom_file),
           "--omega");
    const bool file_model = cfg.model == ModelKind::custom_file;
    forbid(!cfg.system_file.empty() && !file_model, "--system-file");
    forbid(!cfg.meas_file.empty() && !file_model, "--meas-file");
}

void resolve_parameters(RunConfig& cfg, const FlagSet& flags) {
    auto& p = cfg.parameters;
    switch (cfg.model) {
        case ModelKind::three_level:
            p["omega"] = flags.omega.value_or(1.0);
            p["K"] = flags.coupling.value_or(4.0);
            break;
        case ModelKind::four_level:
            p["omega"] = flags.omega.value_or(1.0);
            p["K"] = flags.k.value_or(20.0);
            p["K_prime"] = flags.coupling.value_or(400.0);
            break;
        case ModelKind::cavity:
            p["g"] = flags.g.value_or(1.0);
            p["kappa"] = flags.kappa.value_or(1.0);
            p["n_max"] = static_cast<double>(flags.n_max ? *flags.n_max : env_n_max());
            p["coupling"] = flags.coupling.value_or(1.0);
            if (p["n_max"] < 2) throw ConfigError("--n-max must be >= 2");
            break;
        case ModelKind::decay:
            p["tau_Z"] = flags.tau_z.value_or(1.0);
            p["gamma"] = flags.gamma.value_or(0.01);
            p["K"] = flags.coupling.value_or(0.0);
            break;
        case ModelKind::custom_file:
            if (cfg.system_file.empty())
                throw ConfigError("--system-file is required for --model custom-file");
            if (cfg.meas_file.empty())
                throw ConfigError("--meas-file is required for --model custom-file");
            p["coupling"] = flags.coupling.value_or(1.0);
            break;
    }
}

void validate(RunConfig& cfg, bool samples_explicit) {
    if (cfg.samples < 2) throw ConfigError("--samples must be >= 2");
    if (cfg.t_max <= 0.0) throw ConfigError("--t-max must be > 0");

    if (cfg.command == Command::pulsed) {
        if (cfg.steps < 1) throw ConfigError("--steps must be >= 1");
        if (!samples_explicit)
            cfg.samples = std::min(200, cfg.steps + 1);
        else if (cfg.samples > cfg.steps + 1)
            throw ConfigError("--samples cannot exceed N+1 measurement records");
    }
    if (cfg.command == Command::sweep) {
        if (cfg.sweep_param.empty()) throw ConfigError("--param is required for sweep");
        if (cfg.sweep_values.empty()) throw ConfigError("--values is required for sweep");
        for (std::size_t k = 0; k < cfg.sweep_values.size(); ++k) {
            if (k > 0 && cfg.sweep_values[k] <= cfg.sweep_values[k - 1])
                throw ConfigError("--values must be strictly ascending");
            if (cfg.sweep_param == "N") {
                const double v = cfg.sweep_values[k];
                if (v < 1.0 || v != std::floor(v))
                    throw ConfigError("--values must be positive integers for --param N");
            }
        }
    }
    if (cfg.fit_window && cfg.fit_window->first >= cfg.fit_window->second)
        throw ConfigError("--fit-window must satisfy t0 < t1");
}

// ------------------------------ Model construction ------------------------------

ModelInstance build_model(const RunConfig& cfg) {
    switch (cfg.model) {
        case ModelKind::three_level:
            return models::three_level(get_param(cfg, "omega"), get_param(cfg, "K"));
        case ModelKind::four_level:
            return models::four_level(get_param(cfg, "omega"), get_param(cfg, "K"),
                                      get_param(cfg, "K_prime"));
        case ModelKind::cavity: {
            ModelInstance m = models::lambda_cavity(
                get_param(cfg, "g"), get_param(cfg, "kappa"),
                static_cast<int>(get_param(cfg, "n_max")));
            m.coupling = get_param(cfg, "coupling");
            return m;
        }
        case ModelKind::decay:
            return models::decay_model(get_param(cfg, "tau_Z"), get_param(cfg, "gamma"),
                                       get_param(cfg, "K"));
        case ModelKind::custom_file: {
            ModelInstance m;
            m.name = "custom";
            m.system_H = io::read_operator_file(cfg.system_file);
            m.meas_H = io::read_operator_file(cfg.meas_file);
            if (m.system_H.rows() != m.meas_H.rows())
                throw std::invalid_argument("custom model: system and measurement "
                                            "operators have different dimensions");
            m.space = spaces::SpaceSpec({{"basis", static_cast<int>(m.system_H.rows())}});
            m.initial_state = spaces::basis_vector(m.system_H.rows(), 0);
            m.coupling = get_param(cfg, "coupling");
            return m;
        }
    }
    throw ConfigError("unknown model");
}

// eta = 0 pseudo-partition for dissipative measurement operators; carries the
// single known sector and is not a resolution of the identity.
ZenoPartition zero_sector_partition(const Matrix& meas_H) {
    return ZenoPartition{{core::zero_sector_projector(meas_H)}, {0.0}, meas_H};
}

core::Trajectory subsample(const core::Trajectory& traj, int samples) {
    const std::size_t n = traj.times.size();
    if (samples >= static_cast<int>(n)) return traj;
    core::Trajectory out;
    for (int j = 0; j < samples; ++j) {
        const std::size_t idx = (static_cast<std::size_t>(j) * (n - 1)) / (samples - 1);
        out.times.push_back(traj.times[idx]);
        out.sector_probs.push_back(traj.sector_probs[idx]);
        if (!traj.survival.empty()) out.survival.push_back(traj.survival[idx]);
        out.coherence_norm.push_back(traj.coherence_norm[idx]);
        out.total_norm.push_back(traj.total_norm[idx]);
    }
    return out;
}

void emit(const RunConfig& cfg, const std::string& payload) {
    if (!cfg.output_path.empty()) io::write_text_file(cfg.output_path, payload);
}

// ------------------------------ Commands ----------------------------------------

int run_partition(const RunConfig& cfg, std::ostream& out) {
    const ModelInstance m = build_model(cfg);
    ZenoPartition part;
    std::string note;
    if (m.meas_is_hermitian()) {
        part = core::spectral_partition(m.meas_H);
    } else {
        part = zero_sector_partition(m.meas_H);
        note = " (eta = 0 sector only; measurement operator is non-Hermitian)";
    }
    emit(cfg, cfg.format == OutputFormat::csv
                  ? io::partition_csv(part)
                  : io::partition_json(part, m.space.basis_labels()));
    out << "sectors: " << part.sectors() << note << " [";
    for (std::size_t n = 0; n < part.sectors(); ++n)
        out << (n ? ", " : "") << "eta=" << fmt_short(part.eigenvalues[n])
            << " dim=" << part.sector_dim(n);
    out << "]\n";
    return 0;
}

int run_pulsed(const RunConfig& cfg, std::ostream& out) {
    const ModelInstance m = build_model(cfg);
    const ZenoPartition part = core::spectral_partition(m.meas_H);
    const core::PulsedResult res =
        core::pulsed_evolve(m.system_H, part, m.initial_state, cfg.t_max, cfg.steps);
    const core::Trajectory traj = subsample(res.trajectory, cfg.samples);
    emit(cfg, cfg.format == OutputFormat::csv ? io::trajectory_csv(traj)
                                              : io::trajectory_json(traj));
    out << "final survival: " << fmt_short(traj.survival.back()) << "\n";
    return 0;
}

int run_continuous(const RunConfig& cfg, std::ostream& out) {
    const ModelInstance m = build_model(cfg);
    const ZenoPartition part = m.meas_is_hermitian()
                                   ? core::spectral_partition(m.meas_H)
                                   : zero_sector_partition(m.meas_H);
    const core::Trajectory traj = core::continuous_trajectory(
        m.system_H, m.meas_H, m.coupling, m.initial_state, cfg.t_max, cfg.samples, &part);
    emit(cfg, cfg.format == OutputFormat::csv ? io::trajectory_csv(traj)
                                              : io::trajectory_json(traj));
    out << "final survival: " << fmt_short(traj.survival.back()) << "\n";
    return 0;
}

int run_limit(const RunConfig& cfg, std::ostream& out) {
    const ModelInstance m = build_model(cfg);
    const core::Trajectory traj = core::limit_trajectory(
        m.system_H, m.meas_H, m.coupling, m.initial_state, cfg.t_max, cfg.samples);
    emit(cfg, cfg.format == OutputFormat::csv ? io::trajectory_csv(traj)
                                              : io::trajectory_json(traj));
    out << "final survival: " << fmt_short(traj.survival.back()) << "\n";
    return 0;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
    const ModelInstance m = build_model(cfg);
    core::ConvergenceReport rep;
    if (cfg.sweep_param == "K") {
        rep = core::coupling_convergence_scan(m.system_H, m.meas_H, cfg.sweep_values,
                                              cfg.t_max, cfg.samples);
    } else {
        const ZenoPartition part = core::spectral_partition(m.meas_H);
        std::vector<int> steps;
        steps.reserve(cfg.sweep_values.size());
        for (double v : cfg.sweep_values) steps.push_back(static_cast<int>(v));
        rep = core::pulsed_convergence_scan(m.system_H, part,
                                            core::DensityMatrix::pure(m.initial_state),
                                            cfg.t_max, steps);
    }
    emit(cfg, cfg.format == OutputFormat::csv ? io::report_csv(rep) : io::report_json(rep));
    out << "fitted order: " << fmt_short(rep.fitted_order)
        << " (residual " << fmt_short(rep.fit_residual) << ")\n";
    return 0;
}

int run_darkspace(const RunConfig& cfg, std::ostream& out) {
    const ModelInstance m = build_model(cfg);
    const Matrix kernel = models::dark_space(m);
    emit(cfg, cfg.format == OutputFormat::csv
                  ? io::vectors_csv(kernel)
                  : io::vectors_json(kernel, m.space.basis_labels()));
    out << "dark space dimension: " << kernel.cols() << "\n";
    return 0;
}

int run_decay(const RunConfig& cfg, std::ostream& out) {
    const ModelInstance m = build_model(cfg);
    const ZenoPartition part = m.meas_is_hermitian()
                                   ? core::spectral_partition(m.meas_H)
                                   : zero_sector_partition(m.meas_H);
    const core::Trajectory traj = core::continuous_trajectory(
        m.system_H, m.meas_H, m.coupling, m.initial_state, cfg.t_max, cfg.samples, &part);
    const models::DecayFit fit =
        cfg.fit_window ? models::fit_decay(traj, cfg.fit_window->first, cfg.fit_window->second)
                       : models::fit_decay(traj);
    emit(cfg, cfg.format == OutputFormat::csv ? io::trajectory_csv(traj)
                                              : io::trajectory_json(traj, &fit));
    out << "gamma_eff: " << fmt_short(fit.gamma_eff) << " (window ["
        << fmt_short(fit.t_start) << ", " << fmt_short(fit.t_end) << "])\n";
    return 0;
}

}  // namespace

const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::three_level: return "three-level";
        case ModelKind::four_level: return "four-level";
        case ModelKind::cavity: return "cavity";
        case ModelKind::decay: return "decay";
        case ModelKind::custom_file: return "custom-file";
    }
    return "?";
}

RunConfig parse_config(std::vector<std::string> args) {
    Parser parser;
    std::reverse(args.begin(), args.end());
    try {
        parser.app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{parser.app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig& cfg = parser.cfg;
    CLI::App* sub = parser.app.get_subcommands().front();
    cfg.command = command_from_name(sub->get_name());

    if (parser.model_str.empty()) {
        if (cfg.command == Command::decay) parser.model_str = "decay";
        else if (cfg.command == Command::darkspace) parser.model_str = "cavity";
        else parser.model_str = "three-level";
    }
    cfg.model = model_from_name(parser.model_str);
    cfg.format = parser.format_str == "json" ? OutputFormat::json : OutputFormat::csv;

    if (!parser.fit_window_str.empty()) {
        const auto colon = parser.fit_window_str.find(':');
        if (colon == std::string::npos)
            throw ConfigError("--fit-window expects t0:t1");
        try {
            cfg.fit_window = {std::stod(parser.fit_window_str.substr(0, colon)),
                              std::stod(parser.fit_window_str.substr(colon + 1))};
        } catch (const std::exception&) {
            throw ConfigError("--fit-window expects t0:t1 with numeric bounds");
        }
    }

    reject_foreign_flags(cfg, parser.flags);
    resolve_parameters(cfg, parser.flags);

    bool samples_explicit = false;
    for (const CLI::Option* o : parser.samples_opts) samples_explicit |= o->count() > 0;
    validate(cfg, samples_explicit);
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::partition: return run_partition(cfg, out);
        case Command::pulsed: return run_pulsed(cfg, out);
        case Command::continuous: return run_continuous(cfg, out);
        case Command::limit: return run_limit(cfg, out);
        case Command::sweep: return run_sweep(cfg, out);
        case Command::darkspace: return run_darkspace(cfg, out);
        case Command::decay: return run_decay(cfg, out);
    }
    throw ConfigError("unknown command");
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig cfg;
    try {
        cfg = parse_config(std::move(args));
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        return run(cfg, std::cout);
    } catch (const io::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace zeno::cli
