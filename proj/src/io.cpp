#include "ptolemy/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ptolemy/errors.hpp"

namespace ptolemy {

std::string format_double(double v) {
    char buf[40];
    // shortest representation that round-trips: try increasing precision
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string metric_to_json(const FiniteMetricSpace& space) {
    std::ostringstream out;
    out << "{\n  \"labels\": [";
    for (int i = 0; i < space.n(); ++i) {
        if (i) out << ", ";
        out << nlohmann::json(space.labels[static_cast<std::size_t>(i)]).dump();
    }
    out << "],\n  \"matrix\": [\n";
    for (int i = 0; i < space.n(); ++i) {
        out << "    [";
        for (int j = 0; j < space.n(); ++j) {
            if (j) out << ", ";
            out << format_double(space.d(i, j));
        }
        out << (i + 1 < space.n() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

FiniteMetricSpace metric_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::bad_input, std::string("metric JSON parse failed: ") + e.what());
    }
    if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
        throw error(errc::bad_input, "metric JSON needs a \"matrix\" array");
    std::vector<std::vector<double>> rows;
    for (const auto& r : j["matrix"]) {
        if (!r.is_array()) throw error(errc::bad_input, "matrix rows must be arrays");
        rows.push_back(r.get<std::vector<double>>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    if (!labels.empty() && labels.size() != rows.size())
        throw error(errc::bad_input, "label count does not match matrix size");
    return validate_metric(rows, std::move(labels));
}

std::string metric_to_csv(const FiniteMetricSpace& space) {
    std::ostringstream out;
    for (int i = 0; i < space.n(); ++i) {
        for (int j = 0; j < space.n(); ++j) {
            if (j) out << ",";
            out << format_double(space.d(i, j));
        }
        out << "\n";
    }
    return out.str();
}

FiniteMetricSpace metric_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
            } catch (const std::exception&) {
                throw error(errc::bad_input, "CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw error(errc::bad_input, "CSV matrix is empty");
    return validate_metric(rows, {});
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::bad_input, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::bad_input, "cannot write " + path.string());
    out << text;
}

FiniteMetricSpace read_metric_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const std::string ext = path.extension().string();
    if (ext == ".json") return metric_from_json(text);
    if (ext == ".csv") return metric_from_csv(text);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return metric_from_json(text);
    return metric_from_csv(text);
}

void write_metric_file(const std::filesystem::path& path, const FiniteMetricSpace& space) {
    if (path.extension() == ".csv")
        write_text_file(path, metric_to_csv(space));
    else
        write_text_file(path, metric_to_json(space));
}

std::string graph_to_json(const GraphSpace& g) {
    std::ostringstream out;
    out << "{\n  \"vertices\": [";
    for (int v = 0; v < g.size(); ++v) {
        if (v) out << ", ";
        out << "{\"id\": " << v;
        if (g.has_positions()) {
            const auto& p = g.position(v);
            out << ", \"x\": " << format_double(p[0]) << ", \"y\": " << format_double(p[1]);
        }
        out << "}";
    }
    out << "],\n  \"edges\": [\n";
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out << "    {\"u\": " << edges[i].u << ", \"v\": " << edges[i].v << ", \"len\": " << format_double(edges[i].len)
            << (i + 1 < edges.size() ? "},\n" : "}\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

GraphSpace graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::bad_input, std::string("graph JSON parse failed: ") + e.what());
    }
    if (!j.contains("vertices") || !j.contains("edges"))
        throw error(errc::bad_input, "graph JSON needs \"vertices\" and \"edges\"");
    const auto& jv = j["vertices"];
    const int n = static_cast<int>(jv.size());
    std::vector<std::array<double, 2>> pos;
    bool any_pos = false;
    for (const auto& v : jv)
        if (v.contains("x")) any_pos = true;
    if (any_pos) {
        pos.resize(static_cast<std::size_t>(n));
        for (const auto& v : jv) {
            const int id = v.at("id").get<int>();
            pos.at(static_cast<std::size_t>(id)) = {v.value("x", 0.0), v.value("y", 0.0)};
        }
    }
    std::vector<GraphEdge> edges;
    for (const auto& e : j["edges"])
        edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(), e.at("len").get<double>()});
    return GraphSpace(n, edges, std::move(pos));
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest_hex(std::string_view data) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

} // namespace ptolemy
