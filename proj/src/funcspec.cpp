#include "oas/funcspec.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oas {

namespace {

/// Splits "k1=v1,k2=v2" at top-level commas (commas inside [..] belong to the
/// value) into an ordered key -> value map; duplicate or empty keys rejected.
std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> kv;
    int depth = 0;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("spec: expected key=value, got '" + token + "'");
        std::string key = token.substr(0, eq);
        if (kv.count(key)) throw std::invalid_argument("spec: duplicate key '" + key + "'");
        kv[key] = token.substr(eq + 1);
        token.clear();
    };
    for (char c : body) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            flush();
            continue;
        }
        token += c;
    }
    flush();
    if (depth != 0) throw std::invalid_argument("spec: unbalanced brackets");
    return kv;
}

double to_double(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("spec: bad number '" + s + "'");
}

int to_int(const std::string& s) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("spec: bad integer '" + s + "'");
}

/// "[[1,0],[0,2]]" -> square matrix; "[a,b]" -> 1 x k row (for vectors).
Mat parse_matrix(const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("spec: matrix must be bracketed");
    std::string inner = s.substr(1, s.size() - 2);
    std::vector<std::vector<double>> rows;
    if (!inner.empty() && inner.front() == '[') {
        int depth = 0;
        std::string row;
        for (char c : inner) {
            if (c == '[') {
                if (depth++ == 0) continue;
            }
            if (c == ']') {
                if (--depth == 0) {
                    std::vector<double> r;
                    std::stringstream ss(row);
                    std::string num;
                    while (std::getline(ss, num, ',')) r.push_back(to_double(num));
                    rows.push_back(std::move(r));
                    row.clear();
                    continue;
                }
            }
            if (depth == 1 && c != ',') row += c;
            if (depth == 1 && c == ',') row += c;
            if (depth == 0) continue;
        }
    } else {
        std::vector<double> r;
        std::stringstream ss(inner);
        std::string num;
        while (std::getline(ss, num, ',')) r.push_back(to_double(num));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::invalid_argument("spec: empty matrix");
    Mat M(long(rows.size()), long(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size())
            throw std::invalid_argument("spec: ragged matrix rows");
        for (size_t j = 0; j < rows[i].size(); ++j) M(long(i), long(j)) = rows[i][j];
    }
    return M;
}

Vec parse_vector(const std::string& s) {
    Mat M = parse_matrix(s);
    if (M.rows() != 1) throw std::invalid_argument("spec: expected a flat vector");
    return M.row(0).transpose();
}

std::pair<std::string, std::map<std::string, std::string>> split_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    return {head, parse_kv(body)};
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> allowed, const std::string& head) {
    for (const auto& [k, v] : kv) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw std::invalid_argument("spec: unknown key '" + k + "' for " + head);
    }
}

}  // namespace

FunctionRep parse_function(const std::string& spec) {
    auto [head, kv] = split_spec(spec);
    if (head == "gaussian") {
        reject_unknown(kv, {"c", "n"}, head);
        double c = kv.count("c") ? to_double(kv.at("c")) : 1.0;
        int n = kv.count("n") ? to_int(kv.at("n")) : 1;
        return FunctionRep::gaussian(c, n);
    }
    if (head == "quad") {
        reject_unknown(kv, {"A", "a"}, head);
        if (!kv.count("A")) throw std::invalid_argument("spec: quad needs A=[[..]]");
        Mat A = parse_matrix(kv.at("A"));
        if (A.rows() != A.cols()) throw std::invalid_argument("spec: quad A must be square");
        double a = kv.count("a") ? to_double(kv.at("a")) : 0.0;
        return FunctionRep::quadratic(A, a);
    }
    if (head == "senv") {
        reject_unknown(kv, {"s", "c", "n"}, head);
        if (!kv.count("s")) throw std::invalid_argument("spec: senv needs s=...");
        double s = to_double(kv.at("s"));
        double c = kv.count("c") ? to_double(kv.at("c")) : 1.0;
        int n = kv.count("n") ? to_int(kv.at("n")) : 1;
        return FunctionRep::s_envelope(s, c, n);
    }
    if (head == "sampled") {
        reject_unknown(kv, {"path"}, head);
        if (!kv.count("path")) throw std::invalid_argument("spec: sampled needs path=...");
        return read_samples_csv(kv.at("path"));
    }
    throw std::invalid_argument("spec: unknown potential kind '" + head + "'");
}

WeightFunction parse_weight(const std::string& spec) {
    auto [head, kv] = split_spec(spec);
    if (head == "exp") {
        reject_unknown(kv, {}, head);
        return WeightFunction::exp_neg();
    }
    if (head == "const") {
        reject_unknown(kv, {}, head);
        return WeightFunction::const_one();
    }
    if (head == "power") {
        reject_unknown(kv, {"alpha"}, head);
        if (!kv.count("alpha")) throw std::invalid_argument("spec: power weight needs alpha=...");
        return WeightFunction::power(to_double(kv.at("alpha")));
    }
    throw std::invalid_argument("spec: unknown weight kind '" + head + "'");
}

OrliczFunction parse_orlicz(const std::string& spec) {
    auto [head, kv] = split_spec(spec);
    if (head == "power") {
        reject_unknown(kv, {"e", "p", "n"}, head);
        if (kv.count("e")) return OrliczFunction::power(to_double(kv.at("e")));
        if (kv.count("p") && kv.count("n"))
            return OrliczFunction::power_p(to_double(kv.at("p")), to_int(kv.at("n")));
        throw std::invalid_argument("spec: power needs e=... or p=...,n=...");
    }
    if (head == "const") {
        reject_unknown(kv, {"v"}, head);
        return OrliczFunction::constant(kv.count("v") ? to_double(kv.at("v")) : 1.0);
    }
    throw std::invalid_argument("spec: unknown Orlicz kind '" + head + "'");
}

Grid parse_grid(const std::string& spec) {
    auto [head, kv] = split_spec(spec);
    if (head == "cube") {
        reject_unknown(kv, {"r", "count", "n"}, head);
        double r = kv.count("r") ? to_double(kv.at("r")) : 3.0;
        int count = kv.count("count") ? to_int(kv.at("count")) : 81;
        int n = kv.count("n") ? to_int(kv.at("n")) : 1;
        return Grid::cube(n, r, count);
    }
    if (head == "box") {
        reject_unknown(kv, {"lo", "hi", "count"}, head);
        if (!kv.count("lo") || !kv.count("hi"))
            throw std::invalid_argument("spec: box needs lo=[..],hi=[..]");
        Vec lo = parse_vector(kv.at("lo")), hi = parse_vector(kv.at("hi"));
        int count = kv.count("count") ? to_int(kv.at("count")) : 81;
        return Grid::box(lo, hi, count);
    }
    throw std::invalid_argument("spec: unknown grid kind '" + head + "'");
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_samples_csv(const std::string& path, const FunctionRep& f, const Grid& grid) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    for (int j = 0; j < grid.dim; ++j) os << "x" << (j + 1) << ",";
    os << "value\n";
    for (long i = 0; i < grid.total(); ++i) {
        Vec x = grid.point(i);
        for (int j = 0; j < grid.dim; ++j) os << format_double(x[j]) << ",";
        double v;
        try {
            v = f.eval(x);
        } catch (const std::exception&) {
            v = kInf;
        }
        os << format_double(v) << "\n";
    }
}

FunctionRep read_samples_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(path + ": empty file");
    int ncols = 1 + int(std::count(line.begin(), line.end(), ','));
    int n = ncols - 1;
    if (n < 1) throw std::runtime_error(path + ": need coordinate columns and a value column");

    std::vector<Vec> points;
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        Vec x(n);
        for (int j = 0; j < n; ++j) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error(path + ": short row");
            x[j] = cell == "inf" ? kInf : to_double(cell);
        }
        if (!std::getline(ss, cell, ',')) throw std::runtime_error(path + ": missing value");
        points.push_back(x);
        values.push_back(cell == "inf" ? kInf : cell == "-inf" ? -kInf : to_double(cell));
    }
    if (points.empty()) throw std::runtime_error(path + ": no sample rows");

    // recover the tensor grid from the sorted unique coordinates per axis
    Vec lo(n), hi(n);
    std::vector<int> counts(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<double> coords;
        for (const Vec& p : points) coords.push_back(p[j]);
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        lo[j] = coords.front();
        hi[j] = coords.back();
        counts[size_t(j)] = int(coords.size());
    }
    Grid grid(lo, hi, counts);
    if (grid.total() != long(points.size()))
        throw std::runtime_error(path + ": rows do not form a full tensor grid");
    std::vector<double> ordered(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        // rows are written in flat row-major order; verify rather than assume
        Vec expect = grid.point(long(i));
        if ((expect - points[i]).cwiseAbs().maxCoeff() > 1e-9 * (1 + expect.cwiseAbs().maxCoeff()))
            throw std::runtime_error(path + ": rows out of grid order");
        ordered[i] = values[i];
    }
    return FunctionRep::sampled(grid, std::move(ordered));
}

}  // namespace oas
