#pragma once

// Text interchange formats. All are ASCII with LF line endings.
//
//   edge list:    "n m" then m lines "u v" (u < v), lexicographic order on write
//   coloring:     "t" then one line "u v c" per edge (u < v, 1 <= c <= t)
//   certificate:  "LOWER k S=v1,v2,..."  or
//                 "UPPER k t=<t>" followed by a coloring body

#include <cctype>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "index_solver.hpp"

namespace rainbow {

namespace detail {

// Reads whitespace-separated unsigned decimal fields line by line, tracking
// 1-based line and column numbers for diagnostics.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Advances to the next line; false at end of input.
    bool next() {
        if (!std::getline(in_, line_)) return false;
        ++line_no_;
        pos_ = 0;
        return true;
    }

    void expect_line(const char* what) {
        if (!next()) throw ParseError(line_no_ + 1, 1, std::string("unexpected end of input, expected ") + what);
    }

    std::uint64_t number(const char* what) {
        skip_blanks();
        const std::size_t start = pos_;
        if (pos_ >= line_.size() || !std::isdigit(static_cast<unsigned char>(line_[pos_])))
            throw ParseError(line_no_, start + 1, std::string("expected ") + what);
        std::uint64_t v = 0;
        while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
            const auto d = static_cast<std::uint64_t>(line_[pos_] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
                throw ParseError(line_no_, start + 1, std::string(what) + " is too large");
            v = v * 10 + d;
            ++pos_;
        }
        last_col_ = start + 1;
        return v;
    }

    void literal(std::string_view s) {
        skip_blanks();
        if (line_.compare(pos_, s.size(), s) != 0)
            throw ParseError(line_no_, pos_ + 1, "expected '" + std::string(s) + "'");
        last_col_ = pos_ + 1;
        pos_ += s.size();
    }

    bool peek(char c) const { return pos_ < line_.size() && line_[pos_] == c; }
    void advance() { ++pos_; }

    void end_of_line() {
        skip_blanks();
        if (pos_ < line_.size()) throw ParseError(line_no_, pos_ + 1, "unexpected trailing characters");
    }

    // Only blank lines may follow.
    void end_of_input() {
        while (next()) {
            skip_blanks();
            if (pos_ < line_.size()) throw ParseError(line_no_, pos_ + 1, "unexpected content after last record");
        }
    }

    std::size_t line_no() const { return line_no_; }
    std::size_t last_col() const { return last_col_; }

private:
    void skip_blanks() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
    }

    std::istream& in_;
    std::string line_;
    std::size_t line_no_ = 0;
    std::size_t pos_ = 0;
    std::size_t last_col_ = 1;
};

inline void write_coloring_body(std::ostream& out, const Graph& g, const EdgeColoring& c) {
    out << c.palette() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << c.color(e) << '\n';
}

inline EdgeColoring read_coloring_body(LineReader& rd, const Graph& g) {
    rd.expect_line("palette size t");
    const std::uint64_t t = rd.number("palette size t");
    if (t < 1 || t > kMaxPalette) throw ParseError(rd.line_no(), rd.last_col(), "palette size out of range");
    rd.end_of_line();

    std::vector<Color> colors(g.size(), 0);
    const auto& es = g.edges();
    for (std::size_t i = 0; i < g.size(); ++i) {
        rd.expect_line("an edge color line");
        const std::uint64_t u = rd.number("vertex u");
        const std::size_t ucol = rd.last_col();
        const std::uint64_t v = rd.number("vertex v");
        const std::uint64_t col = rd.number("color c");
        const std::size_t ccol = rd.last_col();
        rd.end_of_line();
        if (u >= v) throw ParseError(rd.line_no(), ucol, "edge must satisfy u < v");
        const auto it = std::lower_bound(es.begin(), es.end(), Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)});
        if (v >= g.order() || it == es.end() || it->u != u || it->v != v)
            throw ParseError(rd.line_no(), ucol, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                     ") is not an edge of the graph");
        const auto idx = static_cast<std::size_t>(it - es.begin());
        if (colors[idx] != 0) throw ParseError(rd.line_no(), ucol, "edge colored twice");
        if (col < 1 || col > t) throw ParseError(rd.line_no(), ccol, "color outside [1, t]");
        colors[idx] = static_cast<Color>(col);
    }
    return EdgeColoring(g, t, colors);
}

}  // namespace detail

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.order() << ' ' << g.size() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

// Edges may appear in any order but must be canonical (u < v) and distinct.
inline Graph read_edge_list(std::istream& in) {
    detail::LineReader rd(in);
    rd.expect_line("header 'n m'");
    const std::uint64_t n = rd.number("vertex count n");
    const std::uint64_t m = rd.number("edge count m");
    rd.end_of_line();
    if (n > std::numeric_limits<Vertex>::max()) throw ParseError(1, 1, "vertex count too large");
    if (m > max_edges(n)) throw ParseError(1, rd.last_col(), "edge count exceeds n(n-1)/2");

    GraphBuilder b(n);
    for (std::uint64_t i = 0; i < m; ++i) {
        rd.expect_line("an edge line 'u v'");
        const std::uint64_t u = rd.number("vertex u");
        const std::size_t ucol = rd.last_col();
        const std::uint64_t v = rd.number("vertex v");
        const std::size_t vcol = rd.last_col();
        rd.end_of_line();
        if (u >= v) throw ParseError(rd.line_no(), ucol, "edge must satisfy u < v");
        if (v >= n) throw ParseError(rd.line_no(), vcol, "vertex out of range");
        if (b.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            throw ParseError(rd.line_no(), ucol, "duplicate edge");
        b.link(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    rd.end_of_input();
    return std::move(b).build();
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
}

inline void write_coloring(std::ostream& out, const Graph& g, const EdgeColoring& c) {
    if (!c.matches(g)) throw ContractError("coloring does not match the graph");
    detail::write_coloring_body(out, g, c);
}

// The coloring must list exactly the edges of g.
inline EdgeColoring read_coloring(std::istream& in, const Graph& g) {
    detail::LineReader rd(in);
    EdgeColoring c = detail::read_coloring_body(rd, g);
    rd.end_of_input();
    return c;
}

// Only LowerWitness and UpperColoring have a file form.
inline void write_certificate(std::ostream& out, const Graph& g, const Certificate& cert) {
    if (const auto* lw = std::get_if<LowerWitness>(&cert)) {
        out << "LOWER " << lw->k << " S=";
        for (std::size_t i = 0; i < lw->set.size(); ++i) out << (i ? "," : "") << lw->set[i];
        out << '\n';
    } else if (const auto* up = std::get_if<UpperColoring>(&cert)) {
        out << "UPPER " << up->k << " t=" << up->coloring.palette() << '\n';
        write_coloring(out, g, up->coloring);
    } else {
        throw ParameterError("exact values have no certificate file form");
    }
}

inline Certificate read_certificate(std::istream& in, const Graph& g) {
    detail::LineReader rd(in);
    rd.expect_line("certificate header");
    if (rd.peek('L')) {
        rd.literal("LOWER");
        const std::uint64_t k = rd.number("k");
        rd.literal("S=");
        std::vector<Vertex> s;
        for (;;) {
            const std::uint64_t v = rd.number("vertex id");
            if (v >= g.order()) throw ParseError(rd.line_no(), rd.last_col(), "vertex out of range");
            s.push_back(static_cast<Vertex>(v));
            if (!rd.peek(',')) break;
            rd.advance();
        }
        rd.end_of_line();
        rd.end_of_input();
        if (s.size() != k) throw ParseError(1, 1, "witness set size differs from k");
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ParseError(1, 1, "witness set must be strictly increasing");
        return LowerWitness{k, VertexSet(std::move(s))};
    }
    rd.literal("UPPER");
    const std::uint64_t k = rd.number("k");
    rd.literal("t=");
    const std::uint64_t t = rd.number("t");
    rd.end_of_line();
    EdgeColoring c = detail::read_coloring_body(rd, g);
    rd.end_of_input();
    if (c.palette() != t) throw ParseError(2, 1, "coloring palette differs from header t");
    return UpperColoring{k, std::move(c), 0};
}

}  // namespace rainbow
