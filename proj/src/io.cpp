#include "ecmobius/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <unistd.h>

#include "ecmobius/errors.hpp"

namespace ecmobius {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

i64 parse_int(const std::string& key, std::string v) {
    if (!v.empty() && v[0] == '+') v.erase(0, 1);
    i64 out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
        fail(ErrorKind::config, "malformed integer for '" + key + "': '" + v + "'");
    return out;
}

double parse_double(const std::string& v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) fail(ErrorKind::config, "malformed number: '" + v + "'");
    return out;
}

}  // namespace

CurveSpec parse_curve_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorKind::config, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) fail(ErrorKind::config, "line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second) fail(ErrorKind::config, "duplicate key '" + key + "'");
    }
    for (const char* req : {"a", "b", "conductor"})
        if (!kv.count(req)) fail(ErrorKind::config, std::string("missing required key '") + req + "'");

    std::optional<int> root;
    std::map<i64, int> overrides;
    std::string label;
    for (const auto& [key, value] : kv) {
        if (key == "a" || key == "b" || key == "conductor") continue;
        if (key == "root_number") {
            if (value == "auto") continue;
            const i64 r = parse_int(key, value);
            if (r != 1 && r != -1) fail(ErrorKind::config, "root_number must be +1, -1 or auto");
            root = static_cast<int>(r);
        } else if (key.rfind("ap_override.", 0) == 0) {
            const i64 p = parse_int(key, key.substr(12));
            overrides[p] = static_cast<int>(parse_int(key, value));
        } else if (key == "label") {
            label = value;
        } else {
            fail(ErrorKind::config, "unknown key '" + key + "'");
        }
    }
    return make_curve(parse_int("a", kv["a"]), parse_int("b", kv["b"]), parse_int("conductor", kv["conductor"]), root,
                      overrides, label);
}

CurveSpec parse_curve_file(const std::string& path) { return parse_curve_text(read_file(path)); }

std::string emit_curve(const CurveSpec& curve) {
    std::ostringstream out;
    if (!curve.label.empty()) out << "label = " << curve.label << '\n';
    out << "a = " << curve.a << '\n' << "b = " << curve.b << '\n' << "conductor = " << curve.conductor << '\n';
    out << "root_number = ";
    if (curve.root_number)
        out << (*curve.root_number > 0 ? "+1" : "-1");
    else
        out << "auto";
    out << '\n';
    for (const auto& [p, ap] : curve.ap_overrides) out << "ap_override." << p << " = " << ap << '\n';
    return out.str();
}

std::string format_coeff_csv(const CoefficientTable& table) {
    std::string out = "n,a_n,mu_numer,mu_sqfree\n";
    out.reserve(out.size() + static_cast<std::size_t>(table.limit) * 24);
    for (i64 n = 1; n <= table.limit; ++n) {
        const auto& m = table.mu[static_cast<std::size_t>(n)];
        out += std::to_string(n) + ',' + std::to_string(table.a[static_cast<std::size_t>(n)]) + ',' +
               std::to_string(m.numer) + ',' + std::to_string(m.sqfree) + '\n';
    }
    return out;
}

CoefficientTable parse_coeff_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "n,a_n,mu_numer,mu_sqfree")
        fail(ErrorKind::config, "coefficient CSV: header must be n,a_n,mu_numer,mu_sqfree");
    CoefficientTable t;
    t.a.push_back(0);
    t.mu.push_back({});
    i64 expect = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 4) fail(ErrorKind::config, "coefficient CSV: expected 4 fields in row " + std::to_string(expect));
        if (parse_int("n", f[0]) != expect) fail(ErrorKind::config, "coefficient CSV: rows must be n = 1, 2, 3, ...");
        t.a.push_back(parse_int("a_n", f[1]));
        MoebiusCoeff m{parse_int("mu_numer", f[2]), parse_int("mu_sqfree", f[3])};
        if (m.sqfree < 1) fail(ErrorKind::config, "coefficient CSV: mu_sqfree must be positive");
        t.mu.push_back(m);
        ++expect;
    }
    t.limit = expect - 1;
    if (t.limit < 1) fail(ErrorKind::config, "coefficient CSV: no rows");
    return t;
}

cd parse_complex(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) fail(ErrorKind::config, "empty complex literal");
    if (s.back() != 'i') return {parse_double(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one or part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    if (split == std::string::npos) {
        if (body.empty() || body == "+") return {0.0, 1.0};
        if (body == "-") return {0.0, -1.0};
        return {0.0, parse_double(body[0] == '+' ? body.substr(1) : body)};
    }
    const std::string re = body.substr(0, split), im = body.substr(split);
    const double imv = (im == "+") ? 1.0 : (im == "-") ? -1.0 : parse_double(im[0] == '+' ? im.substr(1) : im);
    return {parse_double(re[0] == '+' ? re.substr(1) : re), imv};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp =
        target.parent_path() / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::io, "cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) fail(ErrorKind::io, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::io, "cannot rename into '" + path + "'");
    }
}

}  // namespace ecmobius
