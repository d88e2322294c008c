#include "lapperturb/graph_io.hpp"

#include "lapperturb/errors.hpp"
#include "example_data.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace lapperturb {

namespace {

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::size_t parse_node(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || value < 1)
        throw GraphError("line " + std::to_string(line_no) + ": bad node label '" + token + "'");
    return static_cast<std::size_t>(value - 1);
}

std::string weight_text(const Rational& w) {
    if (boost::multiprecision::denominator(w) == 1) return boost::multiprecision::numerator(w).str();
    return to_fraction_string(w);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(strip_comment(line));
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!n) {
            if (tok.size() != 2 || tok[0] != "n")
                throw GraphError("line " + std::to_string(line_no) + ": expected header 'n <count>'");
            std::size_t used = 0;
            long long count = -1;
            try {
                count = std::stoll(tok[1], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok[1].size() || count < 0)
                throw GraphError("line " + std::to_string(line_no) + ": bad node count");
            n = static_cast<std::size_t>(count);
            continue;
        }
        if (tok.size() != 2 && tok.size() != 3)
            throw GraphError("line " + std::to_string(line_no) + ": expected 'u v [weight]'");
        Edge e{parse_node(tok[0], line_no), parse_node(tok[1], line_no), Rational(1)};
        if (tok.size() == 3) {
            try {
                e.weight = parse_rational(tok[2]);
            } catch (const std::invalid_argument& err) {
                throw GraphError("line " + std::to_string(line_no) + ": " + err.what());
            }
        }
        edges.push_back(e);
    }
    if (!n) throw GraphError("edge list has no 'n <count>' header");
    return build_graph(*n, edges);
}

Graph parse_edge_list_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
    return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "n " << g.size() << '\n';
    for (const Edge& e : g.edges()) {
        out << e.u + 1 << ' ' << e.v + 1;
        if (g.is_weighted()) out << ' ' << weight_text(e.weight);
        out << '\n';
    }
}

Graph parse_adjacency_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(strip_comment(line));
        std::vector<Rational> row;
        for (std::string t; fields >> t;) row.push_back(parse_rational(t));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    Matrix<Rational> w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw GraphError("adjacency row " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) w(i, j) = rows[i][j];
    }
    return graph_from_adjacency(w);
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) {
        nlohmann::json w;
        if (boost::multiprecision::denominator(e.weight) == 1)
            w = boost::multiprecision::numerator(e.weight).convert_to<long long>();
        else
            w = to_fraction_string(e.weight);
        edges.push_back({e.u + 1, e.v + 1, w});
    }
    return {{"n", g.size()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) throw GraphError("edge must be [u,v] or [u,v,w]");
        const auto u = e[0].get<long long>();
        const auto v = e[1].get<long long>();
        if (u < 1 || v < 1) throw GraphError("node labels are 1-based");
        Rational w = 1;
        if (e.size() == 3) {
            if (e[2].is_string())
                w = parse_rational(e[2].get<std::string>());
            else if (e[2].is_number_integer())
                w = Rational(e[2].get<long long>());
            else
                w = parse_rational(e[2].dump());
        }
        edges.push_back({static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1), w});
    }
    return build_graph(n, edges);
}

Graph example_graph(int index) {
    switch (index) {
        case 1: return parse_adjacency_text(detail::example1_adjacency);
        case 2: return parse_adjacency_text(detail::example2_adjacency);
        case 3: return parse_adjacency_text(detail::example3_adjacency);
        default: throw std::invalid_argument("no embedded example " + std::to_string(index));
    }
}

}  // namespace lapperturb
