#include "orsched/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "orsched/error.hpp"

namespace orsched {
namespace {

std::string trim(const std::string& s) {
    auto first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    auto last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return first < last ? std::string(first, last) : std::string();
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

/// Splits "KEY: value", "KEY : value" or "KEY value" into (KEY, value).
std::pair<std::string, std::string> split_header(const std::string& line) {
    auto colon = line.find(':');
    if (colon != std::string::npos) {
        return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
    }
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    std::string rest;
    std::getline(ss, rest);
    return {upper(key), trim(rest)};
}

std::optional<double> parse_number(const std::string& token) {
    const char* begin = token.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE) return std::nullopt;
    return v;
}

bool is_section_keyword(const std::string& key) {
    return key.size() > 8 && key.compare(key.size() - 8, 8, "_SECTION") == 0;
}

} // namespace

Instance parse_tsplib(std::istream& in) {
    std::string name;
    std::string type;
    std::string weight_type;
    std::string weight_format;
    std::optional<int> dimension;
    std::size_t line_no = 0;
    std::size_t section_line = 0;
    bool in_section = false;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        auto [key, value] = split_header(t);
        if (key == "EOF") break;
        if (key == "EDGE_WEIGHT_SECTION") {
            in_section = true;
            section_line = line_no;
            break;
        }
        if (is_section_keyword(key)) {
            throw ParseError(key, line_no, "unsupported section (only EDGE_WEIGHT_SECTION is read)");
        }
        if (key == "NAME") {
            name = value;
        } else if (key == "TYPE") {
            type = upper(value);
            if (type != "ATSP" && type != "TSP") {
                throw ParseError("TYPE", line_no, "unsupported problem type '" + value + "'");
            }
        } else if (key == "DIMENSION") {
            auto v = parse_number(value);
            if (!v || *v != std::floor(*v) || *v < 2 || *v > 100000) {
                throw ParseError("DIMENSION", line_no, "expected an integer >= 2, got '" + value + "'");
            }
            dimension = static_cast<int>(*v);
        } else if (key == "EDGE_WEIGHT_TYPE") {
            weight_type = upper(value);
            if (weight_type != "EXPLICIT") {
                throw ParseError("EDGE_WEIGHT_TYPE", line_no,
                                 "unsupported edge weight type '" + value + "' (only EXPLICIT)");
            }
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            weight_format = upper(value);
            if (weight_format != "FULL_MATRIX") {
                throw ParseError("EDGE_WEIGHT_FORMAT", line_no,
                                 "unsupported edge weight format '" + value + "' (only FULL_MATRIX)");
            }
        } else if (value.empty() && key != "COMMENT") {
            throw ParseError(key, line_no, "malformed header line '" + t + "'");
        }
        // COMMENT, CAPACITY, DISPLAY_DATA_TYPE and other informational keys are ignored.
    }

    if (!in_section) throw ParseError("EDGE_WEIGHT_SECTION", line_no, "missing EDGE_WEIGHT_SECTION");
    if (!dimension) throw ParseError("DIMENSION", section_line, "DIMENSION must precede EDGE_WEIGHT_SECTION");
    if (weight_type.empty()) throw ParseError("EDGE_WEIGHT_TYPE", section_line, "missing EDGE_WEIGHT_TYPE");
    if (weight_format.empty()) {
        throw ParseError("EDGE_WEIGHT_FORMAT", section_line, "missing EDGE_WEIGHT_FORMAT");
    }

    const int k = *dimension;
    const std::size_t expected = static_cast<std::size_t>(k) * k;
    std::vector<Cost> weights;
    weights.reserve(expected);

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string token;
        while (ss >> token) {
            if (weights.size() == expected) {
                if (upper(token) == "EOF" || is_section_keyword(upper(token))) goto done;
                throw ParseError("EDGE_WEIGHT_SECTION", line_no,
                                 "too many weights: expected " + std::to_string(expected));
            }
            auto v = parse_number(token);
            if (!v) {
                throw ParseError("EDGE_WEIGHT_SECTION", line_no,
                                 "wrong token count: got " + std::to_string(weights.size()) +
                                     " weights before '" + token + "', expected " +
                                     std::to_string(expected));
            }
            std::size_t idx = weights.size();
            bool diagonal = idx / k == idx % k;
            if (!diagonal && (*v < 0 || !std::isfinite(*v))) {
                throw ParseError("EDGE_WEIGHT_SECTION", line_no,
                                 "negative or non-finite weight " + token + " at row " +
                                     std::to_string(idx / k + 1) + ", column " + std::to_string(idx % k + 1));
            }
            weights.push_back(*v);
        }
    }
done:
    if (weights.size() != expected) {
        throw ParseError("EDGE_WEIGHT_SECTION", line_no,
                         "wrong token count: got " + std::to_string(weights.size()) + ", expected " +
                             std::to_string(expected));
    }
    if (name.empty()) name = "unnamed";
    return Instance(std::move(name), k, std::move(weights));
}

Instance parse_tsplib_string(const std::string& text) {
    std::istringstream in(text);
    return parse_tsplib(in);
}

Instance load_tsplib(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file " + path.string());
    return parse_tsplib(in);
}

void write_tsplib(const Instance& inst, std::ostream& out) {
    const int k = inst.size();
    out << "NAME: " << inst.name() << "\n"
        << "TYPE: ATSP\n"
        << "DIMENSION: " << k << "\n"
        << "EDGE_WEIGHT_TYPE: EXPLICIT\n"
        << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
        << "EDGE_WEIGHT_SECTION\n";
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (int v = 0; v < k; ++v) {
        for (int u = 0; u < k; ++u) {
            if (u) out << ' ';
            Cost w = inst.setup(v, u);
            if (w == std::floor(w) && std::abs(w) < 1e15) {
                out << static_cast<long long>(w);
            } else {
                out << w;
            }
        }
        out << '\n';
    }
    out.precision(old_precision);
    out << "EOF\n";
}

std::string to_tsplib_string(const Instance& inst) {
    std::ostringstream out;
    write_tsplib(inst, out);
    return out.str();
}

} // namespace orsched
