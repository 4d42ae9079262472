#include "voi/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace voi {

namespace {

std::vector<double> split_numbers(const std::string& line, const std::string& path) {
    std::string cleaned = line;
    for (char& ch : cleaned)
        if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
    std::istringstream in(cleaned);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        try {
            size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw IoError(path + ": cannot parse number '" + tok + "'");
        }
    }
    return out;
}

std::string next_data_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::string stripped = line;
        while (!stripped.empty() && (stripped.back() == '\r' || stripped.back() == ' '))
            stripped.pop_back();
        if (!stripped.empty()) return stripped;
    }
    return {};
}

std::string base_name(LogBase base) { return base == LogBase::Bits ? "bits" : "nats"; }

LogBase parse_base(const std::string& s, const std::string& path) {
    if (s == "bits") return LogBase::Bits;
    if (s == "nats") return LogBase::Nats;
    throw IoError(path + ": unknown information base '" + s + "'");
}

// "# voi-curve model=circle-linear n=8 base=bits"
void parse_provenance(const std::string& line, const std::string& kind, const std::string& path,
                      std::string& model, int& n, LogBase& base) {
    std::istringstream in(line);
    std::string tok;
    in >> tok;  // '#'
    in >> tok;
    if (tok != kind) throw IoError(path + ": expected a " + kind + " file");
    bool have_model = false, have_n = false, have_base = false;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "model") { model = val; have_model = true; }
        else if (key == "n") { n = std::stoi(val); have_n = true; }
        else if (key == "base") { base = parse_base(val, path); have_base = true; }
    }
    if (!have_model || !have_n || !have_base)
        throw IoError(path + ": incomplete provenance line");
}

}  // namespace

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

CostFile load_cost_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    const std::string first = next_data_line(in);
    if (first.empty()) throw IoError(path + ": empty file");
    const std::vector<double> head = split_numbers(first, path);
    if (head.size() != 1 || head[0] != std::floor(head[0]) || head[0] < 2)
        throw IoError(path + ": first line must be the point count n (integer >= 2)");
    const int n = static_cast<int>(head[0]);

    Matrix m(n, n);
    for (int x = 0; x < n; ++x) {
        const std::string line = next_data_line(in);
        if (line.empty()) throw IoError(path + ": missing cost row " + std::to_string(x));
        const std::vector<double> row = split_numbers(line, path);
        if (static_cast<int>(row.size()) != n)
            throw IoError(path + ": cost row " + std::to_string(x) + " has " +
                          std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        for (int u = 0; u < n; ++u) m(x, u) = row[static_cast<size_t>(u)];
    }

    CostFile file{CostMatrix{std::move(m), false}, std::nullopt};
    file.cost.translation_invariant = is_translation_invariant(file.cost);

    const std::string tail = next_data_line(in);
    if (!tail.empty()) {
        const std::vector<double> w = split_numbers(tail, path);
        if (static_cast<int>(w.size()) != n)
            throw IoError(path + ": prior line has " + std::to_string(w.size()) +
                          " entries, expected " + std::to_string(n));
        file.prior = normalize(w);
    }
    return file;
}

ProbVector load_prior_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    const std::string first = next_data_line(in);
    if (first.empty()) throw IoError(path + ": empty file");
    const std::vector<double> head = split_numbers(first, path);
    if (head.size() != 1 || head[0] != std::floor(head[0]) || head[0] < 1)
        throw IoError(path + ": first line must be the point count n");
    const int n = static_cast<int>(head[0]);
    const std::string line = next_data_line(in);
    const std::vector<double> w = split_numbers(line, path);
    if (static_cast<int>(w.size()) != n)
        throw IoError(path + ": prior line has " + std::to_string(w.size()) +
                      " entries, expected " + std::to_string(n));
    return normalize(w);
}

void write_curve_csv(const VoiCurve& curve, const std::string& path) {
    std::ostringstream out;
    out << "# voi-curve model=" << curve.model << " n=" << curve.n
        << " base=" << base_name(curve.base) << "\n";
    out << "beta,Z,Gamma,expected_cost,info_nats,info_base,value\n";
    for (const CurvePoint& p : curve.points)
        out << format_num(p.beta) << ',' << format_num(std::exp(p.gamma)) << ','
            << format_num(p.gamma) << ',' << format_num(p.expected_cost) << ','
            << format_num(p.info_nats) << ',' << format_num(p.info) << ','
            << format_num(p.value) << "\n";
    write_file_atomic(path, out.str());
}

CurveFile read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    CurveFile file;
    const std::string prov = next_data_line(in);
    if (prov.empty() || prov[0] != '#') throw IoError(path + ": missing provenance line");
    parse_provenance(prov, "voi-curve", path, file.model, file.n, file.base);
    const std::string header = next_data_line(in);
    if (header != "beta,Z,Gamma,expected_cost,info_nats,info_base,value")
        throw IoError(path + ": unexpected header '" + header + "'");
    for (std::string line = next_data_line(in); !line.empty(); line = next_data_line(in)) {
        const std::vector<double> v = split_numbers(line, path);
        if (v.size() != 7) throw IoError(path + ": malformed data row");
        CurvePoint p;
        p.beta = v[0];
        p.gamma = v[2];
        p.expected_cost = v[3];
        p.info_nats = v[4];
        p.info = v[5];
        p.value = v[6];
        file.points.push_back(p);
    }
    if (file.points.empty()) throw IoError(path + ": no data rows");
    return file;
}

void write_hartley_csv(const std::string& model, int n, LogBase base,
                       const std::vector<HartleyPoint>& points, const std::string& path) {
    std::ostringstream out;
    out << "# voi-hartley model=" << model << " n=" << n << " base=" << base_name(base) << "\n";
    out << "bits,info,value\n";
    for (const HartleyPoint& p : points)
        out << p.bits << ',' << format_num(to_base(p.info_nats, base)) << ','
            << format_num(p.value) << "\n";
    write_file_atomic(path, out.str());
}

HartleyFile read_hartley_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    HartleyFile file;
    const std::string prov = next_data_line(in);
    if (prov.empty() || prov[0] != '#') throw IoError(path + ": missing provenance line");
    parse_provenance(prov, "voi-hartley", path, file.model, file.n, file.base);
    const std::string header = next_data_line(in);
    if (header != "bits,info,value") throw IoError(path + ": unexpected header '" + header + "'");
    for (std::string line = next_data_line(in); !line.empty(); line = next_data_line(in)) {
        const std::vector<double> v = split_numbers(line, path);
        if (v.size() != 3) throw IoError(path + ": malformed data row");
        HartleyPoint p;
        p.bits = static_cast<int>(v[0]);
        p.info_nats = file.base == LogBase::Bits ? v[1] * std::numbers::ln2 : v[1];
        p.value = v[2];
        file.points.push_back(p);
    }
    return file;
}

}  // namespace voi
