#pragma once

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tges/graph/knowledge.hpp"
#include "tges/graph/pdag.hpp"
#include "tges/io/csv.hpp"

namespace tges::io {

namespace detail {

inline std::map<std::string, Node> index_labels(const std::vector<std::string>& labels) {
    std::map<std::string, Node> index;
    for (Node i = 0; i < labels.size(); ++i) {
        if (!index.emplace(labels[i], i).second) throw LabelMismatchError("duplicate variable name '" + labels[i] + "'");
    }
    return index;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Edge list: one edge per line, "A --> B" or "A --- B". Blank lines and lines
// starting with '#' are ignored.

inline std::string write_edge_list(const Pdag& g) {
    std::ostringstream out;
    for (const Edge& e : g.edges()) {
        out << g.label(e.from) << (e.directed ? " --> " : " --- ") << g.label(e.to) << '\n';
    }
    return out.str();
}

inline Pdag read_edge_list(std::istream& in, const std::vector<std::string>& labels,
                           const std::string& source = "<edges>") {
    const auto index = detail::index_labels(labels);
    Pdag g(labels.size(), labels);
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        const std::string_view line = trim(text);
        if (line.empty() || line.front() == '#') continue;

        bool directed = true;
        std::size_t pos = line.find("-->");
        if (pos == std::string_view::npos) {
            pos = line.find("---");
            directed = false;
        }
        if (pos == std::string_view::npos) {
            throw ParseError(source, line_no, 0, "expected 'A --> B' or 'A --- B'");
        }
        const std::string lhs(trim(line.substr(0, pos)));
        const std::string rhs(trim(line.substr(pos + 3)));
        const std::size_t rhs_col = text.find(rhs, text.find(directed ? "-->" : "---") + 3) + 1;
        const auto a = index.find(lhs);
        if (a == index.end()) throw ParseError(source, line_no, 1, "unknown variable '" + lhs + "'");
        const auto b = index.find(rhs);
        if (b == index.end()) throw ParseError(source, line_no, rhs_col, "unknown variable '" + rhs + "'");
        if (a->second == b->second) throw ParseError(source, line_no, 1, "self-loop on '" + lhs + "'");
        if (g.adjacent(a->second, b->second)) {
            throw ParseError(source, line_no, 1, "second edge between '" + lhs + "' and '" + rhs + "'");
        }
        if (directed) {
            g.add_directed(a->second, b->second);
        } else {
            g.add_undirected(a->second, b->second);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Adjacency matrix CSV: header row of names, then d rows of marks. Cell (i,j)
// is 0 (no edge), 1 (i -> j) or 2 (undirected; mirrored in (j,i)).

inline std::string write_adjacency_csv(const Pdag& g) {
    std::ostringstream out;
    for (Node j = 0; j < g.size(); ++j) out << (j ? "," : "") << g.label(j);
    out << '\n';
    for (Node i = 0; i < g.size(); ++i) {
        for (Node j = 0; j < g.size(); ++j) {
            out << (j ? "," : "") << static_cast<int>(g.mark(i, j));
        }
        out << '\n';
    }
    return out.str();
}

inline Pdag read_adjacency_csv(std::istream& in, const std::string& source = "<adjacency>") {
    const std::vector<CsvRow> rows = read_csv(in, source);
    if (rows.empty()) throw ParseError(source, 1, 0, "missing header row");
    const std::vector<std::string>& labels = rows[0].fields;
    const std::size_t d = labels.size();
    detail::index_labels(labels);
    if (rows.size() != d + 1) {
        throw ParseError(source, rows.back().line, 0,
                         "expected " + std::to_string(d) + " matrix rows, found " + std::to_string(rows.size() - 1));
    }
    std::vector<std::vector<long>> m(d, std::vector<long>(d));
    for (std::size_t i = 0; i < d; ++i) {
        const CsvRow& row = rows[i + 1];
        if (row.fields.size() != d) {
            throw ParseError(source, row.line, 0, "expected " + std::to_string(d) + " cells");
        }
        for (std::size_t j = 0; j < d; ++j) {
            m[i][j] = parse_int(row.fields[j], source, row.line, row.columns[j]);
            if (m[i][j] < 0 || m[i][j] > 2) {
                throw ParseError(source, row.line, row.columns[j], "cell must be 0, 1 or 2");
            }
        }
    }
    Pdag g(d, labels);
    for (std::size_t i = 0; i < d; ++i) {
        const CsvRow& row = rows[i + 1];
        for (std::size_t j = 0; j < d; ++j) {
            const bool ok = (m[i][j] == 0 && m[j][i] != 2) || (m[i][j] == 1 && m[j][i] == 0) ||
                            (m[i][j] == 2 && m[j][i] == 2 && i != j);
            if (!ok) throw ParseError(source, row.line, row.columns[j], "inconsistent mark pair");
            if (m[i][j] == 1) g.add_directed(i, j);
            if (m[i][j] == 2 && i < j) g.add_undirected(i, j);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Tier file: CSV with header "variable,tier", tiers positive integers.

struct TierTable {
    std::vector<std::string> variables;
    std::vector<int> tiers;
};

inline TierTable read_tier_table(std::istream& in, const std::string& source = "<tiers>") {
    const std::vector<CsvRow> rows = read_csv(in, source);
    if (rows.empty() || rows[0].fields.size() != 2 || rows[0].fields[0] != "variable" || rows[0].fields[1] != "tier") {
        throw ParseError(source, rows.empty() ? 1 : rows[0].line, 1, "expected header 'variable,tier'");
    }
    TierTable table;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        if (row.fields.size() != 2) throw ParseError(source, row.line, 0, "expected 2 fields");
        if (row.fields[0].empty()) throw ParseError(source, row.line, 1, "empty variable name");
        const long tier = parse_int(row.fields[1], source, row.line, row.columns[1]);
        if (tier < 1) throw ParseError(source, row.line, row.columns[1], "tier must be a positive integer");
        table.variables.push_back(row.fields[0]);
        table.tiers.push_back(static_cast<int>(tier));
    }
    return table;
}

/// Tier assignment aligned to `labels`. Every label must be listed exactly once.
inline TieredKnowledge read_tiers(std::istream& in, const std::vector<std::string>& labels,
                                  const std::string& source = "<tiers>") {
    const TierTable table = read_tier_table(in, source);
    const auto index = detail::index_labels(labels);
    std::vector<int> tiers(labels.size(), 0);
    for (std::size_t r = 0; r < table.variables.size(); ++r) {
        const auto it = index.find(table.variables[r]);
        if (it == index.end()) {
            throw LabelMismatchError(source + ": variable '" + table.variables[r] + "' is not in the data");
        }
        if (tiers[it->second] != 0) {
            throw LabelMismatchError(source + ": variable '" + table.variables[r] + "' listed twice");
        }
        tiers[it->second] = table.tiers[r];
    }
    for (Node i = 0; i < labels.size(); ++i) {
        if (tiers[i] == 0) throw LabelMismatchError(source + ": no tier for variable '" + labels[i] + "'");
    }
    return TieredKnowledge(std::move(tiers));
}

inline std::string write_tiers(const TieredKnowledge& k, const std::vector<std::string>& labels) {
    std::ostringstream out;
    out << "variable,tier\n";
    for (Node i = 0; i < k.size(); ++i) out << labels.at(i) << ',' << k.tier(i) << '\n';
    return out.str();
}

}  // namespace tges::io
