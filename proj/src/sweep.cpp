#include "floqent/sweep.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace floqent {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
const double kNaN = std::numeric_limits<double>::quiet_NaN();

bool uses_symmetric_subspace(const SweepConfig& cfg) {
    if (cfg.subspace == "symmetric") return true;
    if (cfg.subspace == "full") return false;
    // auto: symmetric sector only when every qubit looks the same
    const bool beta_uniform =
        cfg.beta.empty() || std::all_of(cfg.beta.begin(), cfg.beta.end(),
                                        [&](double b) { return std::abs(b - cfg.beta.front()) < 1e-14; });
    const bool scale_uniform = cfg.drive_scale.empty() ||
                               std::all_of(cfg.drive_scale.begin(), cfg.drive_scale.end(), [&](double s) {
                                   return std::abs(s - cfg.drive_scale.front()) < 1e-14;
                               });
    const bool alpha_uniform =
        cfg.alpha.empty() || std::all_of(cfg.alpha.begin(), cfg.alpha.end(),
                                         [&](double a) { return std::abs(a - cfg.alpha.front()) < 1e-14; });
    return cfg.n_qubits >= 2 && beta_uniform && scale_uniform && alpha_uniform;
}

int spectrum_dim(const SweepConfig& cfg) {
    return uses_symmetric_subspace(cfg) ? cfg.n_qubits + 1 : (1 << cfg.n_qubits);
}

bool known_param(const std::string& name) {
    return name == "F" || name == "F_prime" || name == "omega0" || name == "C";
}

void apply_param(const std::string& name, double value, double& F, double& Fp, double& w0, double& C) {
    if (name == "F")
        F = value;
    else if (name == "F_prime")
        Fp = value;
    else if (name == "omega0")
        w0 = value;
    else if (name == "C")
        C = value;
    else
        throw std::invalid_argument("unknown grid parameter: " + name);
}

}  // namespace

// --------------------------------------------------------------- config

void SweepConfig::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("config: n_qubits must be >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("config: omega must be positive");
    for (const AxisSpec* axis : {&x, &y}) {
        if (axis->points < 2) throw std::invalid_argument("config: grid resolution must be >= 2 per axis");
        if (!(axis->max > axis->min)) throw std::invalid_argument("config: axis range must be increasing");
        if (!known_param(axis->param)) throw std::invalid_argument("config: unknown grid parameter " + axis->param);
    }
    if (x.param == y.param) throw std::invalid_argument("config: grid axes must differ");
    if (task != "sweep" && task != "spectrum" && task != "predict" && task != "single-qubit" && task != "validate")
        throw std::invalid_argument("config: unknown task " + task);
    if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
    if (n_samples < 8) throw std::invalid_argument("config: n_samples must be >= 8");
    if (margin < 0) throw std::invalid_argument("config: margin must be non-negative");
    if (steps < 2) throw std::invalid_argument("config: steps must be >= 2");
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (max_failures < 0) throw std::invalid_argument("config: max_failures must be non-negative");
    if (denom < 2 || denom % 2 != 0) throw std::invalid_argument("config: denom must be a positive even integer");
    if (subspace != "auto" && subspace != "full" && subspace != "symmetric")
        throw std::invalid_argument("config: subspace must be auto, full or symmetric");
    if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
    PeriodicDrive::kind_from_string(drive_kind);
    coupling_kind_from_string(coupling_kind);
    if (!beta.empty() && int(beta.size()) != n_qubits)
        throw std::invalid_argument("config: beta must list one weight per qubit");
    if (!drive_scale.empty() && int(drive_scale.size()) != n_qubits)
        throw std::invalid_argument("config: drive_scale must list one weight per qubit");
    const size_t n_pairs = size_t(n_qubits) * (n_qubits - 1) / 2;
    if (!alpha.empty() && alpha.size() != n_pairs)
        throw std::invalid_argument("config: alpha must list one weight per qubit pair");
}

json SweepConfig::to_json() const {
    json j;
    j["system"] = {{"n_qubits", n_qubits},
                   {"omega", omega},
                   {"omega0", omega0},
                   {"beta", beta},
                   {"drive_scale", drive_scale},
                   {"drive", {{"kind", drive_kind}, {"F", F}, {"F_prime", F_prime}, {"harmonics", sawtooth_harmonics}}},
                   {"coupling", {{"kind", coupling_kind}, {"C", C}, {"alpha", alpha}}}};
    j["grid"] = {{"x", {{"param", x.param}, {"min", x.min}, {"max", x.max}, {"points", x.points}}},
                 {"y", {{"param", y.param}, {"min", y.min}, {"max", y.max}, {"points", y.points}}}};
    j["task"] = task;
    j["numerics"] = {{"margin", margin},       {"adaptive", adaptive},  {"n_samples", n_samples},
                     {"steps", steps},         {"tolerance", tolerance}, {"workers", workers},
                     {"max_failures", max_failures}, {"subspace", subspace}, {"denom", denom}};
    j["output"] = {{"dir", out_dir}, {"format", format}, {"plot", plot}, {"seed", seed}};
    return j;
}

SweepConfig SweepConfig::from_json(const json& j) {
    SweepConfig c;
    const json& sys = j.at("system");
    c.n_qubits = sys.value("n_qubits", c.n_qubits);
    c.omega = sys.value("omega", c.omega);
    c.omega0 = sys.value("omega0", c.omega0);
    c.beta = sys.value("beta", c.beta);
    c.drive_scale = sys.value("drive_scale", c.drive_scale);
    if (sys.contains("drive")) {
        const json& d = sys.at("drive");
        c.drive_kind = d.value("kind", c.drive_kind);
        c.F = d.value("F", c.F);
        c.F_prime = d.value("F_prime", c.F_prime);
        c.sawtooth_harmonics = d.value("harmonics", c.sawtooth_harmonics);
    }
    if (sys.contains("coupling")) {
        const json& q = sys.at("coupling");
        c.coupling_kind = q.value("kind", c.coupling_kind);
        c.C = q.value("C", c.C);
        c.alpha = q.value("alpha", c.alpha);
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        for (auto [axis, spec] : {std::pair<const char*, AxisSpec*>{"x", &c.x}, {"y", &c.y}}) {
            if (!g.contains(axis)) continue;
            const json& a = g.at(axis);
            spec->param = a.value("param", spec->param);
            spec->min = a.value("min", spec->min);
            spec->max = a.value("max", spec->max);
            spec->points = a.value("points", spec->points);
        }
    }
    c.task = j.value("task", c.task);
    if (j.contains("numerics")) {
        const json& n = j.at("numerics");
        c.margin = n.value("margin", c.margin);
        c.adaptive = n.value("adaptive", c.adaptive);
        c.n_samples = n.value("n_samples", c.n_samples);
        c.steps = n.value("steps", c.steps);
        c.tolerance = n.value("tolerance", c.tolerance);
        c.workers = n.value("workers", c.workers);
        c.max_failures = n.value("max_failures", c.max_failures);
        c.subspace = n.value("subspace", c.subspace);
        c.denom = n.value("denom", c.denom);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        c.out_dir = o.value("dir", c.out_dir);
        c.format = o.value("format", c.format);
        c.plot = o.value("plot", c.plot);
        c.seed = o.value("seed", c.seed);
    }
    c.validate();
    return c;
}

SweepConfig SweepConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("config: cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + std::string(e.what()));
    }
    return from_json(j);
}

std::string SweepConfig::canonical_string() const { return to_json().dump(); }

std::uint64_t SweepConfig::hash() const {
    const std::string s = canonical_string();
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

QubitSystem SweepConfig::system_at(double x_value, double y_value) const {
    double f = F, fp = F_prime, w0 = omega0, c = C;
    apply_param(x.param, x_value, f, fp, w0, c);
    apply_param(y.param, y_value, f, fp, w0, c);

    PeriodicDrive drv;
    switch (PeriodicDrive::kind_from_string(drive_kind)) {
        case PeriodicDrive::Kind::monochromatic: drv = PeriodicDrive::monochromatic(f, omega); break;
        case PeriodicDrive::Kind::bichromatic: drv = PeriodicDrive::bichromatic(f, fp, omega); break;
        case PeriodicDrive::Kind::sawtooth: drv = PeriodicDrive::sawtooth(f, omega, sawtooth_harmonics); break;
        case PeriodicDrive::Kind::delta_kick: drv = PeriodicDrive::delta_kick(f, omega); break;
        case PeriodicDrive::Kind::custom:
            throw std::invalid_argument("config: custom drives are not available through the CLI");
    }

    QubitSystem sys;
    sys.n_qubits = n_qubits;
    sys.omega0 = w0;
    sys.splitting_weights = beta;
    sys.drive_weights = drive_scale;
    sys.drive = std::move(drv);
    const CouplingKind kind = coupling_kind_from_string(coupling_kind);
    size_t pair_index = 0;
    for (int a = 0; a < n_qubits; ++a) {
        for (int b = a + 1; b < n_qubits; ++b, ++pair_index) {
            const double weight = alpha.empty() ? 1.0 : alpha.at(pair_index);
            if (c * weight != 0.0) sys.couplings.push_back({a, b, kind, c * weight, {}});
        }
    }
    sys.validate();
    return sys;
}

SubspaceBasis SweepConfig::subspace_basis(const QubitSystem& system) const {
    if (uses_symmetric_subspace(*this) && system.n_qubits >= 2) return symmetric_dicke_basis(system.n_qubits);
    return full_basis(system.n_qubits);
}

std::vector<double> SweepConfig::axis_values(const AxisSpec& axis) const {
    std::vector<double> v;
    for (int i = 0; i < axis.points; ++i)
        v.push_back(axis.min + (axis.max - axis.min) * double(i) / double(axis.points - 1));
    return v;
}

// --------------------------------------------------------------- columns

std::vector<std::string> task_columns(const SweepConfig& cfg) {
    std::vector<std::string> cols;
    const int d = spectrum_dim(cfg);
    if (cfg.task == "sweep") {
        cols = {"mu", "deviation", "n_star", "corridor"};
        for (int i = 0; i < d; ++i) cols.push_back("eps_" + std::to_string(i));
        if (cfg.n_qubits == 2 || cfg.n_qubits == 3)
            for (int i = 0; i < d; ++i) cols.push_back("ent_" + std::to_string(i));
    } else if (cfg.task == "spectrum") {
        for (int i = 0; i < d; ++i) cols.push_back("eps_" + std::to_string(i));
    } else if (cfg.task == "predict") {
        cols = {"mu", "deviation", "n_star", "corridor", "allowed"};
    } else if (cfg.task == "single-qubit") {
        cols = {"mu_numeric", "mu_rwa", "mu_bessel", "mu_closed"};
    } else if (cfg.task == "validate") {
        cols = {"mu_fourier", "mu_monodromy", "disagreement"};
    }
    return cols;
}

// --------------------------------------------------------------- point work

namespace {

struct SingleQubitSolve {
    double mu = 0.0;
    FloquetSpectrum spectrum;  // dim 2
    bool has_stacks = false;
};

SingleQubitSolve solve_single(const SweepConfig& cfg, double x_value, double y_value) {
    double f = cfg.F, fp = cfg.F_prime, w0 = cfg.omega0, c = cfg.C;
    apply_param(cfg.x.param, x_value, f, fp, w0, c);
    apply_param(cfg.y.param, y_value, f, fp, w0, c);
    const SingleQubitParams params{w0, cfg.omega, f, fp};
    const auto kind = PeriodicDrive::kind_from_string(cfg.drive_kind);

    SingleQubitSolve out;
    QubitSystem one = single_qubit_system(params, kind);
    SolveOptions solve;
    solve.margin = cfg.margin;
    solve.monodromy.steps = cfg.steps;
    if (kind == PeriodicDrive::Kind::monochromatic || kind == PeriodicDrive::Kind::bichromatic) {
        out.spectrum = solve_fourier(one, full_basis(1), solve);
        out.has_stacks = true;
    } else {
        out.spectrum = solve_monodromy(one, full_basis(1), solve);
        out.has_stacks = false;
    }
    out.mu = std::min(0.5 * (std::abs(out.spectrum.states[0].quasi_energy) +
                             std::abs(out.spectrum.states[1].quasi_energy)),
                      cfg.omega / 2.0);
    return out;
}

std::vector<double> point_sweep(const SweepConfig& cfg, double xv, double yv) {
    const QubitSystem sys = cfg.system_at(xv, yv);
    const SubspaceBasis basis = cfg.subspace_basis(sys);
    SolveOptions solve;
    solve.margin = cfg.margin;
    solve.adaptive = cfg.adaptive;
    solve.monodromy.steps = cfg.steps;
    if (sys.drive.kind == PeriodicDrive::Kind::delta_kick) solve.monodromy.state_samples = cfg.n_samples;

    const FloquetSpectrum spec = solve_system(sys, basis, solve);
    const FloquetSpectrum full =
        basis.kind == SubspaceBasis::Kind::full ? spec : expand_to_full(spec, basis);

    const SingleQubitSolve single = solve_single(cfg, xv, yv);
    const auto dev = degeneracy_deviation(single.mu, cfg.omega, cfg.denom);
    double c_point = cfg.C;
    {
        double f = cfg.F, fp = cfg.F_prime, w0 = cfg.omega0;
        apply_param(cfg.x.param, xv, f, fp, w0, c_point);
        apply_param(cfg.y.param, yv, f, fp, w0, c_point);
    }

    std::vector<double> vals = {single.mu, dev.deviation, double(dev.n),
                                dev.deviation * cfg.omega < 2.0 * std::abs(c_point) ? 1.0 : 0.0};

    // order states against the non-interacting references (descending unfolded
    // quasi-energy); the monodromy backend matches on the t = 0 vectors
    std::vector<int> order(size_t(spec.dim));
    if (sys.identical_parameters() && spec.dim == sys.n_qubits + 1) {
        order = assign_by_overlap(noninteracting_symmetric_states(single.spectrum, sys.n_qubits), full.states);
    } else if (spec.dim == (1 << sys.n_qubits)) {
        std::vector<FloquetSpectrum> singles;
        for (int n = 0; n < sys.n_qubits; ++n) {
            QubitSystem one;
            one.n_qubits = 1;
            one.omega0 = sys.splitting(n);
            one.drive = sys.drive;
            one.drive_weights = {sys.drive_weight(n)};
            SolveOptions so;
            so.margin = cfg.margin;
            so.monodromy.steps = cfg.steps;
            singles.push_back(solve_system(one, full_basis(1), so));
        }
        order = assign_by_overlap(noninteracting_product_states(singles, cfg.omega), full.states);
    } else {
        for (int i = 0; i < spec.dim; ++i) order[size_t(i)] = i;
    }

    for (int slot = 0; slot < spec.dim; ++slot)
        vals.push_back(spec.states[size_t(order[size_t(slot)])].quasi_energy);
    if (cfg.n_qubits == 2 || cfg.n_qubits == 3) {
        const MeasureKind kind = measure_for_qubits(cfg.n_qubits);
        for (int slot = 0; slot < spec.dim; ++slot)
            vals.push_back(time_averaged_entanglement(full, order[size_t(slot)], kind, cfg.n_samples).mean);
    }
    return vals;
}

std::vector<double> point_spectrum(const SweepConfig& cfg, double xv, double yv) {
    const QubitSystem sys = cfg.system_at(xv, yv);
    const SubspaceBasis basis = cfg.subspace_basis(sys);
    SolveOptions solve;
    solve.margin = cfg.margin;
    solve.adaptive = cfg.adaptive;
    solve.monodromy.steps = cfg.steps;
    const FloquetSpectrum spec = solve_system(sys, basis, solve);
    std::vector<double> vals;
    for (const auto& s : spec.states) vals.push_back(s.quasi_energy);
    return vals;
}

std::vector<double> point_predict(const SweepConfig& cfg, double xv, double yv) {
    const SingleQubitSolve single = solve_single(cfg, xv, yv);
    const auto dev = degeneracy_deviation(single.mu, cfg.omega, cfg.denom);
    double f = cfg.F, fp = cfg.F_prime, w0 = cfg.omega0, c_point = cfg.C;
    apply_param(cfg.x.param, xv, f, fp, w0, c_point);
    apply_param(cfg.y.param, yv, f, fp, w0, c_point);

    bool allowed = true;
    const QubitSystem probe = cfg.system_at(xv, yv);
    if (probe.drive.half_period_antisymmetric() && single.has_stacks && cfg.denom / 2 <= cfg.n_qubits) {
        const auto p_minus = parity_classify(single.spectrum.states[0]);
        const auto p_plus = parity_classify(single.spectrum.states[1]);
        // pair (i, j): all-plus against the state with denom/2 minus signs
        const int k = cfg.denom / 2;
        int par_top = 1, par_bot = 1;
        for (int q = 0; q < cfg.n_qubits; ++q) par_top *= p_plus.value;
        for (int q = 0; q < cfg.n_qubits; ++q) par_bot *= (q < k ? p_minus.value : p_plus.value);
        allowed = parity_selection(par_top, par_bot, dev.n);
    }
    return {single.mu, dev.deviation, double(dev.n),
            dev.deviation * cfg.omega < 2.0 * std::abs(c_point) ? 1.0 : 0.0, allowed ? 1.0 : 0.0};
}

std::vector<double> point_single_qubit(const SweepConfig& cfg, double xv, double yv) {
    double f = cfg.F, fp = cfg.F_prime, w0 = cfg.omega0, c = cfg.C;
    apply_param(cfg.x.param, xv, f, fp, w0, c);
    apply_param(cfg.y.param, yv, f, fp, w0, c);
    const SingleQubitParams params{w0, cfg.omega, f, fp};
    const auto kind = PeriodicDrive::kind_from_string(cfg.drive_kind);
    MuOptions mu_opts;
    mu_opts.margin = cfg.margin;
    mu_opts.steps = cfg.steps;
    double closed = kNaN;
    if (kind == PeriodicDrive::Kind::sawtooth) closed = mu_sawtooth(params);
    if (kind == PeriodicDrive::Kind::delta_kick) closed = mu_delta_kick(params);
    return {mu_numeric(params, kind, mu_opts), mu_rwa(params), mu_bessel(params), closed};
}

std::vector<double> point_validate(const SweepConfig& cfg, double xv, double yv) {
    const QubitSystem sys = cfg.system_at(xv, yv);
    const SubspaceBasis basis = cfg.subspace_basis(sys);
    SolveOptions solve;
    solve.margin = cfg.margin;
    solve.adaptive = cfg.adaptive;
    solve.monodromy.steps = cfg.steps;
    const FloquetSpectrum fourier = solve_fourier(sys, basis, solve);
    const FloquetSpectrum mono = solve_monodromy(sys, basis, solve);
    const double dist = circular_set_distance(fourier.quasi_energies(), mono.quasi_energies(), cfg.omega);
    const double mu_f = std::abs(fourier.states.back().quasi_energy);
    const double mu_m = std::abs(mono.states.back().quasi_energy);
    return {mu_f, mu_m, dist};
}

std::vector<double> compute_point(const SweepConfig& cfg, double xv, double yv) {
    if (cfg.task == "sweep") return point_sweep(cfg, xv, yv);
    if (cfg.task == "spectrum") return point_spectrum(cfg, xv, yv);
    if (cfg.task == "predict") return point_predict(cfg, xv, yv);
    if (cfg.task == "single-qubit") return point_single_qubit(cfg, xv, yv);
    if (cfg.task == "validate") return point_validate(cfg, xv, yv);
    throw std::invalid_argument("unknown task: " + cfg.task);
}

}  // namespace

// --------------------------------------------------------------- execution

SweepResult run(const SweepConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();

    SweepResult result;
    result.config = config;
    result.columns = {config.x.param, config.y.param};
    for (const auto& c : task_columns(config)) result.columns.push_back(c);
    result.columns.push_back("status");

    const auto xs = config.axis_values(config.x);
    const auto ys = config.axis_values(config.y);
    const size_t total = xs.size() * ys.size();
    result.rows.resize(total);

    const size_t n_values = task_columns(config).size();
    std::atomic<size_t> cursor{0};
    std::atomic<int> failures{0};

    auto worker = [&]() {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= total) return;
            const double xv = xs[i / ys.size()];
            const double yv = ys[i % ys.size()];
            SweepRow row;
            row.x = xv;
            row.y = yv;
            try {
                row.values = compute_point(config, xv, yv);
                row.ok = true;
            } catch (const std::exception&) {
                row.values.assign(n_values, kNaN);
                row.ok = false;
                failures.fetch_add(1);
            }
            result.rows[i] = std::move(row);
        }
    };

    const int n_threads = std::max(1, std::min<int>(config.workers, int(total)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    result.failures = failures.load();
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

// --------------------------------------------------------------- formatting

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const SweepResult& result) {
    std::string out;
    for (size_t i = 0; i < result.columns.size(); ++i) {
        if (i) out += ',';
        out += result.columns[i];
    }
    out += '\n';
    for (const auto& row : result.rows) {
        out += format_double(row.x);
        out += ',';
        out += format_double(row.y);
        for (const double v : row.values) {
            out += ',';
            out += format_double(v);
        }
        out += row.ok ? ",ok" : ",failed";
        out += '\n';
    }
    return out;
}

std::string to_json_rows(const SweepResult& result) {
    json rows = json::array();
    for (const auto& row : result.rows) {
        json r;
        r[result.columns[0]] = row.x;
        r[result.columns[1]] = row.y;
        for (size_t i = 0; i < row.values.size(); ++i) {
            const double v = row.values[i];
            if (std::isnan(v))
                r[result.columns[i + 2]] = nullptr;
            else
                r[result.columns[i + 2]] = v;
        }
        r["status"] = row.ok ? "ok" : "failed";
        rows.push_back(std::move(r));
    }
    return rows.dump(2) + "\n";
}

// --------------------------------------------------------------- disk I/O

namespace {

struct ParsedRow {
    std::vector<double> values;  // x, y, task values
    bool ok = false;
};

std::map<std::string, ParsedRow> read_existing(const std::filesystem::path& csv, size_t n_columns) {
    std::map<std::string, ParsedRow> out;
    std::ifstream in(csv);
    if (!in) return out;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != n_columns) continue;
        ParsedRow row;
        row.ok = fields.back() == "ok";
        bool good = true;
        for (size_t i = 0; i + 1 < fields.size(); ++i) {
            try {
                row.values.push_back(std::stod(fields[i]));
            } catch (...) {
                good = false;
                break;
            }
        }
        if (!good) continue;
        out[fields[0] + "," + fields[1]] = std::move(row);
    }
    return out;
}

std::string plot_script_text(const SweepResult& result) {
    const SweepConfig& cfg = result.config;
    std::string value_col;
    for (const auto& c : result.columns)
        if (c.rfind("ent_", 0) == 0) {
            value_col = c;
            break;
        }
    if (value_col.empty()) {
        for (const auto& c : result.columns)
            if (c == "deviation" || c == "disagreement" || c == "mu_numeric" || c.rfind("eps_", 0) == 0 || c == "mu") {
                value_col = c;
                break;
            }
    }

    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "\"\"\"Heatmaps from results.csv; color runs white (separable) to black (maximally entangled).\"\"\"\n";
    s += "import csv\n";
    s += "from pathlib import Path\n";
    s += "import numpy as np\n";
    s += "import matplotlib\n";
    s += "matplotlib.use(\"Agg\")\n";
    s += "import matplotlib.pyplot as plt\n";
    s += "\n";
    s += "HERE = Path(__file__).resolve().parent\n";
    s += "rows = list(csv.DictReader((HERE / \"results.csv\").open()))\n";
    s += "if not rows:\n";
    s += "    print(\"results.csv carries no data rows; nothing to plot\")\n";
    s += "    raise SystemExit(0)\n";
    s += "x_name, y_name = \"" + cfg.x.param + "\", \"" + cfg.y.param + "\"\n";
    s += "value_cols = [c for c in rows[0] if c.startswith(\"ent_\")] or [\"" + value_col + "\"]\n";
    s += "xs = sorted({float(r[x_name]) for r in rows})\n";
    s += "ys = sorted({float(r[y_name]) for r in rows})\n";
    s += "for col in value_cols:\n";
    s += "    grid = np.full((len(ys), len(xs)), np.nan)\n";
    s += "    dev = np.full((len(ys), len(xs)), np.nan)\n";
    s += "    for r in rows:\n";
    s += "        i = ys.index(float(r[y_name])); j = xs.index(float(r[x_name]))\n";
    s += "        grid[i, j] = float(r[col])\n";
    s += "        if \"deviation\" in r: dev[i, j] = float(r[\"deviation\"])\n";
    s += "    fig, ax = plt.subplots(figsize=(5, 4))\n";
    s += "    im = ax.imshow(grid, origin=\"lower\", cmap=\"gray_r\", vmin=0.0, vmax=1.0,\n";
    s += "                   extent=[xs[0], xs[-1], ys[0], ys[-1]], aspect=\"auto\")\n";
    s += "    if np.isfinite(dev).all():\n";
    s += "        level = " + format_double(std::abs(cfg.C) > 0 ? 2.0 * std::abs(cfg.C) / cfg.omega : 0.05) + "\n";
    s += "        ax.contour(xs, ys, dev, levels=[level], colors=\"tab:blue\", linestyles=\"dashed\", linewidths=0.8)\n";
    s += "    ax.set_xlabel(x_name + \" / omega\")\n";
    s += "    ax.set_ylabel(y_name + \" / omega\")\n";
    s += "    ax.set_title(col)\n";
    s += "    fig.colorbar(im, ax=ax)\n";
    s += "    fig.tight_layout()\n";
    s += "    fig.savefig(HERE / (col + \".png\"), dpi=160)\n";
    s += "    print(\"wrote\", HERE / (col + \".png\"))\n";
    return s;
}

}  // namespace

void emit_plot_script(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_plot_script: cannot write " + path.string());
    out << plot_script_text(result);
}

int run_to_disk(const SweepConfig& config, bool resume) {
    config.validate();
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    const std::filesystem::path csv_path = dir / "results.csv";

    SweepResult result;
    if (resume && std::filesystem::exists(csv_path)) {
        const size_t n_cols = 2 + task_columns(config).size() + 1;
        const auto existing = read_existing(csv_path, n_cols);

        result.config = config;
        result.columns = {config.x.param, config.y.param};
        for (const auto& c : task_columns(config)) result.columns.push_back(c);
        result.columns.push_back("status");

        const auto xs = config.axis_values(config.x);
        const auto ys = config.axis_values(config.y);
        const size_t n_values = task_columns(config).size();
        int failures = 0;
        for (const double xv : xs) {
            for (const double yv : ys) {
                const std::string key = format_double(xv) + "," + format_double(yv);
                SweepRow row;
                row.x = xv;
                row.y = yv;
                const auto it = existing.find(key);
                if (it != existing.end() && it->second.ok && it->second.values.size() == n_values + 2) {
                    row.values.assign(it->second.values.begin() + 2, it->second.values.end());
                    row.ok = true;
                } else {
                    try {
                        row.values = compute_point(config, xv, yv);
                        row.ok = true;
                    } catch (const std::exception&) {
                        row.values.assign(n_values, kNaN);
                        row.ok = false;
                        ++failures;
                    }
                }
                result.rows.push_back(std::move(row));
            }
        }
        result.failures = failures;
    } else {
        result = run(config);
    }

    {
        std::ofstream out(csv_path, std::ios::binary);
        out << to_csv(result);
    }
    if (config.format == "json") {
        std::ofstream out(dir / "results.json", std::ios::binary);
        out << to_json_rows(result);
    }
    {
        char hash_hex[32];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx", static_cast<unsigned long long>(config.hash()));
        json meta;
        meta["config"] = config.to_json();
        meta["config_hash"] = std::string(hash_hex);
        meta["version"] = kVersion;
        meta["columns"] = result.columns;
        meta["rows"] = result.rows.size();
        meta["failures"] = result.failures;
        meta["wall_seconds"] = result.wall_seconds;
        meta["seed"] = config.seed;
        std::ofstream out(dir / "meta.json", std::ios::binary);
        out << meta.dump(2) << "\n";
    }
    if (config.plot) emit_plot_script(result, dir / "plot.py");

    return result.failures > config.max_failures ? 3 : 0;
}

}  // namespace floqent
