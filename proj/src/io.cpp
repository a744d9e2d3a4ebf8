#include "robin/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <sstream>

#include "robin/errors.hpp"

namespace robin {

using nlohmann::json;

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

json num(double x)
{
    if (std::isfinite(x)) return x;
    return format_double(x);
}

double get_num(const json& j)
{
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ParseError("expected a number, got " + j.dump());
}

json opt_num(const std::optional<double>& x) { return x ? num(*x) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get_num(j.at(key));
}

std::vector<double> get_vec(const json& j)
{
    std::vector<double> out;
    for (const auto& x : j) out.push_back(get_num(x));
    return out;
}

json vec(const std::vector<double>& v)
{
    json out = json::array();
    for (double x : v) out.push_back(num(x));
    return out;
}

json interval(const Interval& i) { return json::array({num(i.lo), num(i.hi)}); }
Interval get_interval(const json& j) { return {get_num(j.at(0)), get_num(j.at(1))}; }

// ---- domain files

struct DomainReader {
    std::string source;

    [[noreturn]] void fail(const std::string& path, const std::string& what) const
    {
        throw ParseError(source + ": " + path + ": " + what);
    }

    void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const
    {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [key, value] : obj.items()) {
            (void)value;
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                fail(path + "." + key, "unknown key");
        }
    }

    const json& field(const json& obj, const std::string& path, const char* key) const
    {
        if (!obj.contains(key)) fail(path + "." + key, "missing key");
        return obj.at(key);
    }

    double number(const json& obj, const std::string& path, const char* key) const
    {
        const json& v = field(obj, path, key);
        if (!v.is_number()) fail(path + "." + key, "expected a number");
        return v.get<double>();
    }

    std::vector<double> numbers(const json& obj, const std::string& path, const char* key, std::size_t size = 0) const
    {
        const json& v = field(obj, path, key);
        if (!v.is_array()) fail(path + "." + key, "expected an array of numbers");
        if (size && v.size() != size) fail(path + "." + key, "expected " + std::to_string(size) + " numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) fail(path + "." + key + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    std::vector<double> numbers_or_empty(const json& obj, const std::string& path, const char* key) const
    {
        return obj.contains(key) ? numbers(obj, path, key) : std::vector<double>{};
    }

    Vec2 point(const json& obj, const std::string& path, const char* key) const
    {
        const auto v = numbers(obj, path, key, 2);
        return {v[0], v[1]};
    }

    std::pair<double, double> span(const json& obj, const std::string& path) const
    {
        if (!obj.contains("span")) return {0.0, 2.0 * std::numbers::pi};
        const auto v = numbers(obj, path, "span", 2);
        return {v[0], v[1]};
    }

    BoundaryArc arc(const json& obj, const std::string& path) const
    {
        if (!obj.is_object()) fail(path, "expected an object");
        const json& kind = field(obj, path, "kind");
        if (!kind.is_string()) fail(path + ".kind", "expected a string");
        const std::string k = kind.get<std::string>();
        bool reversed = false;
        if (obj.contains("reversed")) {
            if (!obj.at("reversed").is_boolean()) fail(path + ".reversed", "expected true or false");
            reversed = obj.at("reversed").get<bool>();
        }
        try {
            if (k == "circle") {
                only_keys(obj, path, {"kind", "center", "radius", "span", "reversed"});
                const auto [t0, t1] = span(obj, path);
                return BoundaryArc(CircleArc{point(obj, path, "center"), number(obj, path, "radius"), t0, t1}, reversed);
            }
            if (k == "ellipse") {
                only_keys(obj, path, {"kind", "center", "semi_axes", "span", "reversed"});
                const auto [t0, t1] = span(obj, path);
                const auto ax = numbers(obj, path, "semi_axes", 2);
                return BoundaryArc(EllipseArc{point(obj, path, "center"), ax[0], ax[1], t0, t1}, reversed);
            }
            if (k == "segment") {
                only_keys(obj, path, {"kind", "from", "to", "reversed"});
                return BoundaryArc(SegmentArc{point(obj, path, "from"), point(obj, path, "to")}, reversed);
            }
            if (k == "fourier") {
                only_keys(obj, path, {"kind", "x_cos", "x_sin", "y_cos", "y_sin", "span", "reversed"});
                const auto [t0, t1] = span(obj, path);
                FourierArc f{numbers_or_empty(obj, path, "x_cos"), numbers_or_empty(obj, path, "x_sin"),
                             numbers_or_empty(obj, path, "y_cos"), numbers_or_empty(obj, path, "y_sin"), t0, t1};
                return BoundaryArc(std::move(f), reversed);
            }
        } catch (const MalformedCurveError& e) {
            fail(path, e.what());
        }
        fail(path + ".kind", "unknown arc kind '" + k + "' (expected circle, ellipse, segment or fourier)");
    }
};

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

DomainBoundary parse_domain(const std::string& text, const std::string& source)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        std::string what = e.what();
        const auto pos = what.find("parse error");
        if (pos != std::string::npos) what = what.substr(pos);
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
    }
    const DomainReader r{source};
    r.only_keys(doc, "$", {"arcs", "exterior"});
    bool exterior = false;
    if (doc.contains("exterior")) {
        if (!doc.at("exterior").is_boolean()) r.fail("$.exterior", "expected true or false");
        exterior = doc.at("exterior").get<bool>();
    }
    const json& arcs = r.field(doc, "$", "arcs");
    if (!arcs.is_array() || arcs.empty()) r.fail("$.arcs", "expected a non-empty array");
    std::vector<BoundaryArc> out;
    for (std::size_t i = 0; i < arcs.size(); ++i) out.push_back(r.arc(arcs[i], "$.arcs[" + std::to_string(i) + "]"));
    try {
        return DomainBoundary(std::move(out), exterior);
    } catch (const MalformedDomainError& e) {
        throw ParseError(source + ": " + e.what());
    }
}

DomainBoundary load_domain(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_domain(ss.str(), path);
}

DomainBoundary builtin_domain(const std::string& spec)
{
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            double v = 0.0;
            const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
            if (res.ec != std::errc() || res.ptr != item.data() + item.size())
                throw ParseError("builtin '" + spec + "': bad parameter '" + item + "'");
            params.push_back(v);
        }
    }
    const auto want = [&](std::size_t n) {
        if (!params.empty() && params.size() != n)
            throw ParseError("builtin '" + name + "' takes " + std::to_string(n) + " parameter(s)");
    };
    if (name == "disk") {
        want(1);
        const double R = params.empty() ? 1.0 : params[0];
        if (!(R > 0.0)) throw ParseError("builtin disk: radius must be positive");
        return DomainBoundary({BoundaryArc(CircleArc{{0.0, 0.0}, R})});
    }
    if (name == "ellipse") {
        want(2);
        const double a = params.empty() ? 2.0 : params[0];
        const double b = params.empty() ? 1.0 : params[1];
        if (!(a > 0.0 && b > 0.0)) throw ParseError("builtin ellipse: semi-axes must be positive");
        return DomainBoundary({BoundaryArc(EllipseArc{{0.0, 0.0}, a, b})});
    }
    if (name == "fourier") {
        want(1);
        const double eps = params.empty() ? 0.1 : params[0];
        if (!(std::abs(eps) <= 0.1)) throw ParseError("builtin fourier: need |eps| <= 0.1");
        // (1 + eps cos 3t)(cos t, sin t)
        FourierArc f;
        f.x_cos = {0.0, 1.0, 0.5 * eps, 0.0, 0.5 * eps};
        f.x_sin = {0.0, 0.0, 0.0, 0.0, 0.0};
        f.y_cos = {0.0, 0.0, 0.0, 0.0, 0.0};
        f.y_sin = {0.0, 1.0, -0.5 * eps, 0.0, 0.5 * eps};
        return DomainBoundary({BoundaryArc(std::move(f))});
    }
    throw ParseError("unknown builtin '" + name + "' (expected disk, ellipse or fourier)");
}

// ---- certificates and bracket results

json to_json(const GroundStateCertificate& c)
{
    return {{"operator", to_string(c.op)},
            {"a", num(c.a)},
            {"beta", num(c.beta)},
            {"gamma", opt_num(c.gamma)},
            {"k", num(c.k)},
            {"log_gap", num(c.log_gap)},
            {"eigenvalue", num(c.eigenvalue)},
            {"enclosure", interval(c.enclosure)},
            {"residual", num(c.residual)},
            {"iterations", c.iterations},
            {"extended_precondition", c.extended_precondition},
            {"strictly_enclosed", c.strictly_enclosed()}};
}

GroundStateCertificate certificate_from_json(const json& j)
{
    GroundStateCertificate c;
    const std::string op = j.at("operator").get<std::string>();
    if (op == to_string(ModelOperator::robin_robin)) c.op = ModelOperator::robin_robin;
    else if (op == to_string(ModelOperator::robin_dirichlet)) c.op = ModelOperator::robin_dirichlet;
    else throw ParseError("unknown model operator '" + op + "'");
    c.a = get_num(j.at("a"));
    c.beta = get_num(j.at("beta"));
    c.gamma = get_opt(j, "gamma");
    c.k = get_num(j.at("k"));
    c.log_gap = get_num(j.at("log_gap"));
    c.eigenvalue = get_num(j.at("eigenvalue"));
    c.enclosure = get_interval(j.at("enclosure"));
    c.residual = get_num(j.at("residual"));
    c.iterations = j.at("iterations").get<int>();
    c.extended_precondition = j.at("extended_precondition").get<bool>();
    return c;
}

namespace {

json constants_json(const TransverseConstants& c)
{
    return {{"K", num(c.K)},         {"C", num(c.C)},
            {"v", num(c.v)},         {"a", num(c.a)},
            {"a0", num(c.a0)},       {"a1", num(c.a1)},
            {"beta_min", num(c.beta_min)},
            {"max_potential", num(c.max_potential)},
            {"trace_rule", c.rule == TraceRule::sharp ? "sharp" : "elementary"}};
}

TraceRule trace_rule_from(const std::string& s)
{
    if (s == "sharp") return TraceRule::sharp;
    if (s == "elementary") return TraceRule::elementary;
    throw ParseError("unknown trace rule '" + s + "'");
}

TransverseConstants constants_from(const json& j)
{
    TransverseConstants c;
    c.K = get_num(j.at("K"));
    c.C = get_num(j.at("C"));
    c.v = get_num(j.at("v"));
    c.a = get_num(j.at("a"));
    c.a0 = get_num(j.at("a0"));
    c.a1 = get_num(j.at("a1"));
    c.beta_min = get_num(j.at("beta_min"));
    c.max_potential = get_num(j.at("max_potential"));
    c.rule = trace_rule_from(j.at("trace_rule").get<std::string>());
    return c;
}

BracketMode mode_from(const std::string& s)
{
    if (s == to_string(BracketMode::sharp_root)) return BracketMode::sharp_root;
    if (s == to_string(BracketMode::closed_form)) return BracketMode::closed_form;
    throw ParseError("unknown bracket mode '" + s + "'");
}

MRule m_rule_from(const std::string& s)
{
    if (s == to_string(MRule::standard)) return MRule::standard;
    if (s == to_string(MRule::critical)) return MRule::critical;
    throw ParseError("unknown M rule '" + s + "'");
}

json certificates(const std::vector<GroundStateCertificate>& v)
{
    json out = json::array();
    for (const auto& c : v) out.push_back(to_json(c));
    return out;
}

std::vector<GroundStateCertificate> certificates_from(const json& j)
{
    std::vector<GroundStateCertificate> out;
    for (const auto& c : j) out.push_back(certificate_from_json(c));
    return out;
}

json strip_json(const StripBounds& s)
{
    return {{"mode", to_string(s.mode)},
            {"lower", num(s.lower)},
            {"upper", num(s.upper)},
            {"lower_shift", num(s.lower_shift)},
            {"upper_shift", num(s.upper_shift)},
            {"argmin_lower", s.argmin_lower},
            {"argmin_upper", s.argmin_upper},
            {"interval_lower", vec(s.interval_lower)},
            {"interval_upper", vec(s.interval_upper)},
            {"lower_certificates", certificates(s.lower_certificates)},
            {"upper_certificates", certificates(s.upper_certificates)},
            {"beta_a", opt_num(s.beta_a)}};
}

StripBounds strip_from(const json& j)
{
    StripBounds s;
    s.mode = mode_from(j.at("mode").get<std::string>());
    s.lower = get_num(j.at("lower"));
    s.upper = get_num(j.at("upper"));
    s.lower_shift = get_num(j.at("lower_shift"));
    s.upper_shift = get_num(j.at("upper_shift"));
    s.argmin_lower = j.at("argmin_lower").get<std::size_t>();
    s.argmin_upper = j.at("argmin_upper").get<std::size_t>();
    s.interval_lower = get_vec(j.at("interval_lower"));
    s.interval_upper = get_vec(j.at("interval_upper"));
    s.lower_certificates = certificates_from(j.at("lower_certificates"));
    s.upper_certificates = certificates_from(j.at("upper_certificates"));
    s.beta_a = get_opt(j, "beta_a");
    return s;
}

}  // namespace

json to_json(const BracketResult& r)
{
    json arcs = json::array();
    for (const auto& a : r.arcs) {
        json kappa = json::array();
        for (const auto& i : a.kappa) kappa.push_back(interval(i));
        arcs.push_back({{"arc", a.arc},
                        {"kind", a.kind},
                        {"length", num(a.length)},
                        {"max_kappa", num(a.max_kappa)},
                        {"constants", constants_json(a.constants)},
                        {"M", a.M},
                        {"delta", num(a.delta)},
                        {"lower", num(a.lower)},
                        {"upper", num(a.upper)},
                        {"kappa_bounds", kappa},
                        {"strip", strip_json(a.strip)}});
    }
    std::optional<double> beta_a;
    for (const auto& a : r.arcs)
        if (a.strip.beta_a) beta_a = std::max(beta_a.value_or(*a.strip.beta_a), *a.strip.beta_a);
    return {{"beta", num(r.beta)},
            {"mode", to_string(r.mode)},
            {"m_rule", to_string(r.m_rule)},
            {"trace_rule", r.trace_rule == TraceRule::sharp ? "sharp" : "elementary"},
            {"a", num(r.a)},
            {"a1", num(r.a1)},
            {"gamma_max", num(r.gamma_max)},
            {"widening", num(r.widening)},
            {"exterior", r.exterior},
            {"lower", num(r.lower)},
            {"upper", num(r.upper)},
            {"width", num(r.width())},
            {"beta_a", opt_num(beta_a)},
            {"arcs", arcs}};
}

BracketResult bracket_from_json(const json& j)
{
    try {
        BracketResult r;
        r.beta = get_num(j.at("beta"));
        r.mode = mode_from(j.at("mode").get<std::string>());
        r.m_rule = m_rule_from(j.at("m_rule").get<std::string>());
        r.trace_rule = trace_rule_from(j.at("trace_rule").get<std::string>());
        r.a = get_num(j.at("a"));
        r.a1 = get_num(j.at("a1"));
        r.gamma_max = get_num(j.at("gamma_max"));
        r.widening = get_num(j.at("widening"));
        r.exterior = j.at("exterior").get<bool>();
        r.lower = get_num(j.at("lower"));
        r.upper = get_num(j.at("upper"));
        for (const auto& a : j.at("arcs")) {
            ArcBracket b;
            b.arc = a.at("arc").get<std::size_t>();
            b.kind = a.at("kind").get<std::string>();
            b.length = get_num(a.at("length"));
            b.max_kappa = get_num(a.at("max_kappa"));
            b.constants = constants_from(a.at("constants"));
            b.M = a.at("M").get<int>();
            b.delta = get_num(a.at("delta"));
            b.lower = get_num(a.at("lower"));
            b.upper = get_num(a.at("upper"));
            for (const auto& i : a.at("kappa_bounds")) b.kappa.push_back(get_interval(i));
            b.strip = strip_from(a.at("strip"));
            r.arcs.push_back(std::move(b));
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bracket result: ") + e.what());
    }
}

json to_json(const SweepRecord& r)
{
    return {{"beta", num(r.beta)},
            {"method", to_string(r.method)},
            {"ok", r.ok},
            {"status", r.status},
            {"lower", opt_num(r.lower)},
            {"upper", opt_num(r.upper)},
            {"oracle", opt_num(r.oracle)},
            {"residual", opt_num(r.residual)}};
}

SweepRecord record_from_json(const json& j)
{
    try {
        SweepRecord r;
        r.beta = get_num(j.at("beta"));
        r.method = parse_method(j.at("method").get<std::string>());
        r.ok = j.at("ok").get<bool>();
        r.status = j.at("status").get<std::string>();
        r.lower = get_opt(j, "lower");
        r.upper = get_opt(j, "upper");
        r.oracle = get_opt(j, "oracle");
        r.residual = get_opt(j, "residual");
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("sweep record: ") + e.what());
    }
}

namespace {

json line_json(const std::optional<LineFit>& f)
{
    if (!f) return nullptr;
    return {{"slope", num(f->slope)},
            {"slope_halfwidth", num(f->slope_halfwidth)},
            {"intercept", num(f->intercept)},
            {"n", f->n}};
}

}  // namespace

json to_json(const FitResult& f)
{
    return {{"c2", num(f.c2)},
            {"c1", num(f.c1)},
            {"gamma_max", num(f.gamma_max)},
            {"beta_range", json::array({num(f.beta_lo), num(f.beta_hi)})},
            {"n", f.n},
            {"rms_residual", num(f.rms_residual)},
            {"fit_residuals", vec(f.fit_residuals)},
            {"remainder_slope", line_json(f.remainder)},
            {"width_slope", line_json(f.width)}};
}

json to_json(const ValidationReport& report)
{
    json junctions = json::array();
    for (const auto& j : report.junctions)
        junctions.push_back({{"from_arc", j.from_arc},
                             {"to_arc", j.to_arc},
                             {"vertex", json::array({num(j.vertex.x), num(j.vertex.y)})},
                             {"angle", num(j.angle)},
                             {"mismatch", num(j.mismatch)},
                             {"kind", to_string(j.kind)}});
    return {{"passed", report.passed()},
            {"unit_speed_residual", num(report.unit_speed_residual)},
            {"closure_residual", num(report.closure_residual)},
            {"no_convex_corners", report.no_convex_corners},
            {"orientation_ok", report.orientation_ok},
            {"loop_areas", vec(report.loop_areas)},
            {"junctions", junctions},
            {"violations", report.violations}};
}

// ---- CSV

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out + "\"";
}

std::string csv_num(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<double> parse_num(const std::string& s, std::size_t line)
{
    if (s.empty()) return std::nullopt;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

constexpr const char* kCsvHeader = "beta,lower,upper,oracle,residual,width,method,status";

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records, const std::optional<std::string>& comment)
{
    if (comment) out << "# " << *comment << '\n';
    out << kCsvHeader << '\n';
    for (const auto& r : records)
        out << format_double(r.beta) << ',' << csv_num(r.lower) << ',' << csv_num(r.upper) << ','
            << csv_num(r.oracle) << ',' << csv_num(r.residual) << ',' << csv_num(r.width()) << ','
            << to_string(r.method) << ',' << csv_field(r.status) << '\n';
}

std::vector<SweepRecord> read_csv(std::istream& in)
{
    std::vector<SweepRecord> out;
    std::string line;
    std::size_t n = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != kCsvHeader) throw ParseError("csv line " + std::to_string(n) + ": unexpected header");
            header = true;
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 8) throw ParseError("csv line " + std::to_string(n) + ": expected 8 fields");
        SweepRecord r;
        r.beta = *parse_num(f[0], n);
        r.lower = parse_num(f[1], n);
        r.upper = parse_num(f[2], n);
        r.oracle = parse_num(f[3], n);
        r.residual = parse_num(f[4], n);
        r.method = parse_method(f[6]);
        r.status = f[7];
        r.ok = r.status == "ok";
        out.push_back(std::move(r));
    }
    if (!header) throw ParseError("csv: missing header");
    return out;
}

// ---- SVG

void write_svg(std::ostream& out, const std::vector<SweepRecord>& records, const std::string& title)
{
    struct Series {
        std::string name;
        std::string color;
        std::vector<std::pair<double, double>> pts;
    };
    const bool have_oracle = std::any_of(records.begin(), records.end(),
                                         [](const SweepRecord& r) { return r.ok && r.method == Method::bessel; });
    Series res{"|residual|", "#1f5fa8", {}};
    Series wid{"bracket width", "#c0392b", {}};
    for (const auto& r : records) {
        if (!r.ok) continue;
        const bool res_source = have_oracle ? r.method == Method::bessel : r.method == Method::bracket;
        if (res_source && r.residual && *r.residual != 0.0) res.pts.emplace_back(r.beta, std::abs(*r.residual));
        if (auto w = r.width(); w && *w > 0.0) wid.pts.emplace_back(r.beta, *w);
    }

    const double W = 720, H = 480, left = 80, right = 170, top = 40, bottom = 60;
    double xlo = 1.0, xhi = 10.0, ylo = 0.1, yhi = 1.0;
    bool any = false;
    for (const auto* s : {&res, &wid})
        for (const auto& [x, y] : s->pts) {
            if (!any) {
                xlo = xhi = x;
                ylo = yhi = y;
                any = true;
            }
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    const int dx0 = static_cast<int>(std::floor(std::log10(xlo)));
    const int dx1 = std::max(dx0 + 1, static_cast<int>(std::ceil(std::log10(xhi))));
    const int dy0 = static_cast<int>(std::floor(std::log10(ylo)));
    const int dy1 = std::max(dy0 + 1, static_cast<int>(std::ceil(std::log10(yhi))));
    const auto px = [&](double x) { return left + (std::log10(x) - dx0) / (dx1 - dx0) * (W - left - right); };
    const auto py = [&](double y) { return H - bottom - (std::log10(y) - dy0) / (dy1 - dy0) * (H - top - bottom); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
        << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title << "</text>\n";
    for (int d = dx0; d <= dx1; ++d) {
        const double x = left + static_cast<double>(d - dx0) / (dx1 - dx0) * (W - left - right);
        out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << H - bottom
            << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
    }
    for (int d = dy0; d <= dy1; ++d) {
        const double y = H - bottom - static_cast<double>(d - dy0) / (dy1 - dy0) * (H - top - bottom);
        out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << W - right << "\" y2=\"" << y
            << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\""
        << H - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">beta</text>\n";

    double ly = top + 10;
    for (const auto* s : {&res, &wid}) {
        out << "<g class=\"series\" data-name=\"" << s->name << "\">\n";
        if (!s->pts.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << s->color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s->pts) out << px(x) << ',' << py(y) << ' ';
            out << "\"/>\n";
            for (const auto& [x, y] : s->pts)
                out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << s->color << "\"/>\n";
        }
        out << "</g>\n";
        out << "<line x1=\"" << W - right + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - right + 36 << "\" y2=\"" << ly
            << "\" stroke=\"" << s->color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - right + 42 << "\" y=\"" << ly + 4 << "\">" << s->name << "</text>\n";
        ly += 20;
    }
    out << "</svg>\n";
}

}  // namespace robin
