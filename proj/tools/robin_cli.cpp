// robin-bracket: certified bounds for the principal Robin eigenvalue of planar domains.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robin/asympt.hpp"
#include "robin/bracket.hpp"
#include "robin/direct.hpp"
#include "robin/errors.hpp"
#include "robin/geometry.hpp"
#include "robin/io.hpp"

namespace {

using namespace robin;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct RunConfig {
    std::string domain_file;
    std::string builtin;
    std::vector<double> betas;
    std::string beta_range;
    std::optional<double> a;
    std::optional<int> M;
    std::string mode = "sharp";
    bool critical_M = false;
    std::string trace_rule = "sharp";
    std::string out;
    std::string plot;
    std::string fit_out;
    std::string csv_in;
    std::string append_csv;
    std::vector<std::string> methods;
    std::optional<double> gamma;
    double radius = 1.0;
    bool no_header = false;
    bool serial = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DomainBoundary load(const RunConfig& cfg)
{
    if (cfg.domain_file.empty() == cfg.builtin.empty())
        throw UsageError("give exactly one of --domain and --builtin");
    return cfg.domain_file.empty() ? builtin_domain(cfg.builtin) : load_domain(cfg.domain_file);
}

BracketOptions bracket_options(const RunConfig& cfg)
{
    BracketOptions o;
    o.a = cfg.a;
    o.M = cfg.M;
    if (cfg.mode == "sharp" || cfg.mode == "sharp-root") o.mode = BracketMode::sharp_root;
    else if (cfg.mode == "closed-form" || cfg.mode == "paper" || cfg.mode == "paper-asymptotic") o.mode = BracketMode::closed_form;
    else throw UsageError("--mode must be sharp or closed-form");
    if (cfg.trace_rule == "sharp") o.trace_rule = TraceRule::sharp;
    else if (cfg.trace_rule == "elementary") o.trace_rule = TraceRule::elementary;
    else throw UsageError("--trace-rule must be sharp or elementary");
    o.m_rule = cfg.critical_M ? MRule::critical : MRule::standard;
    o.exec = cfg.serial ? Exec::serial : Exec::parallel;
    return o;
}

std::vector<double> betas(const RunConfig& cfg)
{
    if (!cfg.beta_range.empty() && !cfg.betas.empty()) throw UsageError("give either --beta or --beta-range");
    if (cfg.beta_range.empty()) {
        if (cfg.betas.empty()) throw UsageError("no beta given (use --beta or --beta-range)");
        return cfg.betas;
    }
    std::vector<std::string> parts;
    std::stringstream ss(cfg.beta_range);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--beta-range expects start:end:count");
    double start = 0.0, end = 0.0;
    long count = 0;
    try {
        std::size_t p0 = 0, p1 = 0, p2 = 0;
        start = std::stod(parts[0], &p0);
        end = std::stod(parts[1], &p1);
        count = std::stol(parts[2], &p2);
        if (p0 != parts[0].size() || p1 != parts[1].size() || p2 != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw UsageError("--beta-range: cannot read '" + cfg.beta_range + "'");
    }
    if (!(start > 0.0)) throw UsageError("--beta-range: start must be positive");
    if (!(end > start)) throw UsageError("--beta-range: end must be larger than start");
    if (count < 2) throw UsageError("--beta-range: count must be at least 2");
    return geometric_betas(start, end, static_cast<std::size_t>(count));
}

std::vector<Method> methods(const RunConfig& cfg, const DomainBoundary& domain)
{
    std::vector<Method> out;
    for (const auto& m : cfg.methods) {
        try {
            out.push_back(parse_method(m));
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }
    if (out.empty()) {
        out.push_back(Method::bracket);
        if (disk_radius(domain)) out.push_back(Method::bessel);
    }
    return out;
}

std::string timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << "robin-bracket sweep, generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

std::string num(double x)
{
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

ValidationReport validated(const DomainBoundary& domain)
{
    try {
        return validate_domain(domain);
    } catch (const AssumptionViolation& e) {
        for (const auto& v : e.report().violations) std::cerr << "violation: " << v << '\n';
        throw;
    }
}

int cmd_validate(const RunConfig& cfg)
{
    const DomainBoundary domain = load(cfg);
    ValidationReport report;
    try {
        report = validate_domain(domain);
    } catch (const AssumptionViolation& e) {
        for (const auto& v : e.report().violations) std::cout << "violation: " << v << '\n';
        if (!cfg.out.empty()) emit(cfg.out, to_json(e.report()).dump(2) + "\n");
        return kFailed;
    }
    std::size_t corners = 0;
    for (const auto& j : report.junctions)
        if (j.kind == JunctionKind::reflex) ++corners;
    std::cout << "closed boundary, " << domain.arcs().size() << " arc(s), " << domain.loops().size() << " loop(s)"
              << (domain.exterior() ? ", exterior" : "") << '\n';
    for (const auto& j : report.junctions)
        std::cout << "junction arc " << j.from_arc << " -> arc " << j.to_arc << ": " << to_string(j.kind)
                  << ", opening angle " << num(j.angle) << '\n';
    std::cout << (corners == 0 ? std::string("no corners") : std::to_string(corners) + " reflex corner(s)")
              << ", γ_max = " << num(gamma_max(domain)) << '\n';
    std::cout << "unit-speed residual " << num(report.unit_speed_residual) << ", all hypotheses hold\n";
    if (!cfg.out.empty()) emit(cfg.out, to_json(report).dump(2) + "\n");
    return kOk;
}

int cmd_bracket(const RunConfig& cfg)
{
    const DomainBoundary domain = load(cfg);
    const auto bs = betas(cfg);
    if (bs.size() != 1) throw UsageError("bracket takes a single --beta");
    validated(domain);
    const BracketResult r = domain_bounds(domain, bs.front(), bracket_options(cfg));
    emit(cfg.out, to_json(r).dump(2) + "\n");
    if (!cfg.append_csv.empty()) {
        SweepRecord rec;
        rec.beta = r.beta;
        rec.ok = true;
        rec.status = "ok";
        rec.lower = r.lower;
        rec.upper = r.upper;
        rec.residual = r.midpoint() + r.beta * r.beta + r.gamma_max * r.beta;
        std::ostringstream os;
        write_csv(os, {rec});
        std::string text = os.str();
        std::ifstream probe(cfg.append_csv);
        if (probe && probe.peek() != std::ifstream::traits_type::eof()) text = text.substr(text.find('\n') + 1);
        probe.close();
        std::ofstream f(cfg.append_csv, std::ios::app);
        if (!f) throw UsageError("cannot write " + cfg.append_csv);
        f << text;
    }
    return kOk;
}

nlohmann::json fit_document(const std::vector<SweepRecord>& records, double gmax)
{
    nlohmann::json fits = nlohmann::json::object();
    for (Method m : {Method::bracket, Method::bessel}) {
        std::vector<SweepRecord> sub;
        for (const auto& r : records)
            if (r.method == m) sub.push_back(r);
        if (sub.empty()) continue;
        try {
            fits[to_string(m)] = to_json(fit_expansion(sub, gmax));
        } catch (const FitError& e) {
            fits[to_string(m)] = {{"error", e.what()}};
        }
    }
    std::size_t failed = 0;
    for (const auto& r : records)
        if (!r.ok) ++failed;
    return {{"gamma_max", gmax}, {"records", records.size()}, {"failed", failed}, {"fits", fits}};
}

int cmd_sweep(const RunConfig& cfg)
{
    const DomainBoundary domain = load(cfg);
    const auto bs = betas(cfg);
    validated(domain);
    const BracketOptions opts = bracket_options(cfg);
    const BracketSetup setup = prepare_bracket(domain, opts);
    const auto records = sweep(setup, bs, methods(cfg, domain), opts.exec);
    std::ostringstream csv;
    write_csv(csv, records, cfg.no_header ? std::nullopt : std::optional<std::string>(timestamp()));
    emit(cfg.out, csv.str());
    if (!cfg.fit_out.empty()) emit(cfg.fit_out, fit_document(records, setup.gamma_max).dump(2) + "\n");
    if (!cfg.plot.empty()) {
        std::ostringstream svg;
        write_svg(svg, records, "remainder and bracket width");
        emit(cfg.plot, svg.str());
    }
    for (const auto& r : records)
        if (!r.ok) std::cerr << "beta " << num(r.beta) << " (" << to_string(r.method) << "): " << r.status << '\n';
    return kOk;
}

int cmd_fit(const RunConfig& cfg)
{
    if (cfg.csv_in.empty()) throw UsageError("fit needs --csv <sweep.csv>");
    std::ifstream in(cfg.csv_in);
    if (!in) throw UsageError("cannot read " + cfg.csv_in);
    const auto records = read_csv(in);
    double gmax = 0.0;
    if (cfg.gamma) {
        if (!cfg.domain_file.empty() || !cfg.builtin.empty()) throw UsageError("give either --gamma-max or a domain");
        gmax = *cfg.gamma;
    } else {
        gmax = gamma_max(load(cfg));
    }
    emit(cfg.out, fit_document(records, gmax).dump(2) + "\n");
    if (!cfg.plot.empty()) {
        std::ostringstream svg;
        write_svg(svg, records, "remainder and bracket width");
        emit(cfg.plot, svg.str());
    }
    return kOk;
}

int cmd_disk_exact(const RunConfig& cfg)
{
    if (!(cfg.radius > 0.0)) throw UsageError("--radius must be positive");
    std::ostringstream os;
    os << "beta,eigenvalue,k,residual\n";
    for (double b : betas(cfg)) {
        const DiskEigen d = disk_ground(cfg.radius, b);
        os << format_double(b) << ',' << format_double(d.eigenvalue) << ',' << format_double(d.k) << ','
           << format_double(d.residual) << '\n';
    }
    emit(cfg.out, os.str());
    return kOk;
}

void domain_flags(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--domain", cfg.domain_file, "JSON domain file");
    sub->add_option("--builtin", cfg.builtin, "disk[:R], ellipse[:a,b] or fourier[:eps]");
}

void beta_flags(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--beta", cfg.betas, "Robin parameter(s)");
    sub->add_option("--beta-range", cfg.beta_range, "geometric range start:end:count");
}

void bracket_flags(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--a", cfg.a, "strip half-width (default 0.95 a1)");
    sub->add_option("--M", cfg.M, "number of intervals per arc (default from beta)")->check(CLI::PositiveNumber);
    sub->add_option("--mode", cfg.mode, "sharp or closed-form (alias: paper)")->capture_default_str();
    sub->add_flag("--critical-M", cfg.critical_M, "use M ~ beta^(1/4)");
    sub->add_option("--trace-rule", cfg.trace_rule, "sharp or elementary")->capture_default_str();
    sub->add_flag("--serial", cfg.serial, "run the serial reference kernels");
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Certified bounds for the principal Robin eigenvalue of planar domains"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "check the domain hypotheses");
    domain_flags(validate, cfg);
    validate->add_option("--out", cfg.out, "write the report as JSON");

    auto* bracket = app.add_subcommand("bracket", "two-sided bound at one beta");
    domain_flags(bracket, cfg);
    beta_flags(bracket, cfg);
    bracket_flags(bracket, cfg);
    bracket->add_option("--out", cfg.out, "JSON output (default stdout)");
    bracket->add_option("--append-csv", cfg.append_csv, "append a CSV row to this file");

    auto* sweep_cmd = app.add_subcommand("sweep", "bounds and oracles over a range of beta");
    domain_flags(sweep_cmd, cfg);
    beta_flags(sweep_cmd, cfg);
    bracket_flags(sweep_cmd, cfg);
    sweep_cmd->add_option("--methods", cfg.methods, "bracket and/or bessel")->delimiter(',');
    sweep_cmd->add_option("--out", cfg.out, "CSV output (default stdout)");
    sweep_cmd->add_option("--fit-out", cfg.fit_out, "write the expansion fit as JSON");
    sweep_cmd->add_option("--plot", cfg.plot, "write a log-log SVG plot");
    sweep_cmd->add_flag("--no-header", cfg.no_header, "omit the timestamp line");

    auto* fit = app.add_subcommand("fit", "fit the two-term expansion to a sweep CSV");
    domain_flags(fit, cfg);
    fit->add_option("--csv", cfg.csv_in, "sweep CSV")->required();
    fit->add_option("--gamma-max", cfg.gamma, "maximal curvature, instead of a domain");
    fit->add_option("--out", cfg.out, "JSON output (default stdout)");
    fit->add_option("--plot", cfg.plot, "write a log-log SVG plot");

    auto* disk = app.add_subcommand("disk-exact", "disk eigenvalue from the Bessel equation");
    beta_flags(disk, cfg);
    disk->add_option("--radius", cfg.radius, "disk radius")->capture_default_str();
    disk->add_option("--out", cfg.out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(cfg);
        if (*bracket) return cmd_bracket(cfg);
        if (*sweep_cmd) return cmd_sweep(cfg);
        if (*fit) return cmd_fit(cfg);
        if (*disk) return cmd_disk_exact(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const AssumptionViolation& e) {
        std::cerr << "assumption violated: " << e.what() << '\n';
        return kFailed;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
