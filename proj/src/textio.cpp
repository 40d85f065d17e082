#include "flagnet/textio.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "flagnet/errors.hpp"

namespace flagnet {

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const std::size_t a = s.find_first_not_of(ws);
    if (a == std::string_view::npos) return {};
    const std::size_t b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

std::vector<std::string_view> split(std::string_view s, char delim) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(delim, pos);
        if (next == std::string_view::npos) {
            parts.push_back(s.substr(pos));
            return parts;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

std::uint64_t parse_uint(std::string_view token, std::size_t line, const std::string& what) {
    token = trim(token);
    if (token.empty()) throw ParseError("missing " + what, line);
    std::uint64_t v = 0;
    for (char ch : token) {
        if (ch < '0' || ch > '9')
            throw ParseError("bad " + what + " \"" + std::string(token) + "\"", line);
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
        if (v > 0xffffffffull) throw ParseError(what + " out of range", line);
    }
    return v;
}

std::vector<std::uint32_t> parse_row(std::string_view text, const Field& field,
                                     std::size_t line) {
    std::vector<std::uint32_t> codes;
    for (std::string_view token : split(text, ',')) {
        const std::uint64_t v = parse_uint(token, line, "entry");
        if (v >= field.order())
            throw ParseError("entry " + std::to_string(v) + " out of range for " +
                             field.to_string(), line);
        codes.push_back(static_cast<std::uint32_t>(v));
    }
    return codes;
}

/// Sequential reader over the lines of a file, skipping blank lines
/// and '#' comments, reporting 1-based line numbers.
class LineReader {
public:
    explicit LineReader(std::string_view text) : lines_(split(text, '\n')) {}

    bool next(std::string_view& line, std::size_t& number) {
        while (pos_ < lines_.size()) {
            const std::size_t current = ++pos_;
            const std::string_view candidate = trim(lines_[current - 1]);
            if (candidate.empty() || candidate.front() == '#') continue;
            line = candidate;
            number = current;
            return true;
        }
        return false;
    }

    std::string_view require(const std::string& what, std::size_t& number) {
        std::string_view line;
        if (!next(line, number)) throw ParseError("unexpected end of input, expected " + what,
                                                  lines_.size());
        return line;
    }

    void require_end(const std::string& format) {
        std::string_view line;
        std::size_t number = 0;
        if (next(line, number))
            throw ParseError("unexpected trailing content in " + format, number);
    }

private:
    std::vector<std::string_view> lines_;
    std::size_t pos_ = 0;
};

std::uint64_t expect_kv(std::string_view line, const std::string& key, std::size_t number) {
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)) != key)
        throw ParseError("expected \"" + key + "=<int>\"", number);
    return parse_uint(line.substr(eq + 1), number, key);
}

Field parse_field_line(std::string_view line, std::size_t number) {
    try {
        return Field::parse(line);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), number);
    }
}

void append_csv(std::ostringstream& out, const std::vector<std::uint32_t>& codes) {
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) out << ',';
        out << codes[i];
    }
}

std::vector<std::uint32_t> row_codes(const MatrixF& m, std::size_t r) {
    std::vector<std::uint32_t> codes(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) codes[c] = m.code_at(r, c);
    return codes;
}

UpperTriangular triangular_from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                                     const std::vector<std::size_t>& line_numbers,
                                     const Field& field, std::size_t n) {
    UpperTriangular m(field, n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::vector<std::uint32_t>& row = rows[r];
        const std::size_t line = line_numbers[r];
        if (row.size() > n)
            throw ParseError("row has " + std::to_string(row.size()) + " entries, expected at most " +
                             std::to_string(n), line);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c < r) {
                if (row[c] != 0)
                    throw ParseError("entry below the diagonal must be 0", line);
            } else {
                m.set_code(r, c, row[c]);
            }
        }
    }
    return m;
}

}  // namespace

std::string matrix_to_text(const MatrixF& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out << ';';
        append_csv(out, row_codes(m, r));
    }
    return out.str();
}

MatrixF matrix_from_text(std::string_view text, const Field& field) {
    const std::vector<std::string_view> row_texts = split(text, ';');
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::string_view r : row_texts) rows.push_back(parse_row(r, field, 0));
    for (const auto& row : rows) {
        if (row.size() != rows.front().size())
            throw ParseError("rows have unequal lengths");
    }
    MatrixF m(field, rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.set_code(r, c, rows[r][c]);
    return m;
}

std::string triangular_to_text(const UpperTriangular& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.n(); ++r) {
        if (r) out << ';';
        std::vector<std::uint32_t> codes(m.n());
        for (std::size_t c = 0; c < m.n(); ++c) codes[c] = m.code_at(r, c);
        append_csv(out, codes);
    }
    return out.str();
}

UpperTriangular triangular_from_text(std::string_view text, const Field& field, std::size_t n) {
    const std::vector<std::string_view> row_texts = split(text, ';');
    if (row_texts.size() != n)
        throw ParseError("matrix has " + std::to_string(row_texts.size()) + " rows, expected " +
                         std::to_string(n));
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<std::size_t> numbers(n, 0);
    for (std::string_view r : row_texts) rows.push_back(parse_row(r, field, 0));
    return triangular_from_rows(rows, numbers, field, n);
}

std::string triangular_file_text(const UpperTriangular& m) {
    std::ostringstream out;
    out << "utmatrix v1\n" << m.field().to_string() << "\nn=" << m.n() << "\n";
    for (std::size_t r = 0; r < m.n(); ++r) {
        std::vector<std::uint32_t> codes(m.n());
        for (std::size_t c = 0; c < m.n(); ++c) codes[c] = m.code_at(r, c);
        append_csv(out, codes);
        out << "\n";
    }
    return out.str();
}

UpperTriangular triangular_file_parse(std::string_view text) {
    LineReader reader(text);
    std::size_t number = 0;
    if (reader.require("\"utmatrix v1\" header", number) != "utmatrix v1")
        throw ParseError("expected \"utmatrix v1\" header", number);
    // require() updates number, so it must finish before the line is
    // parsed under that number.
    const std::string_view field_line = reader.require("a field line", number);
    const Field field = parse_field_line(field_line, number);
    const std::string_view n_line = reader.require("n=<int>", number);
    const std::size_t n = static_cast<std::size_t>(expect_kv(n_line, "n", number));
    if (n == 0) throw ParseError("n must be positive", number);

    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<std::size_t> numbers;
    for (std::size_t r = 0; r < n; ++r) {
        const std::string_view line = reader.require("a matrix row", number);
        rows.push_back(parse_row(line, field, number));
        numbers.push_back(number);
    }
    reader.require_end("matrix file");
    return triangular_from_rows(rows, numbers, field, n);
}

std::string code_file_text(const FlagRankCode& code) {
    std::ostringstream out;
    out << "flagcode v1\n" << code.field().to_string() << "\nn=" << code.n()
        << "\ndim=" << code.dim() << "\n";
    for (const UpperTriangular& b : code.basis()) out << triangular_to_text(b) << "\n";
    return out.str();
}

FlagRankCode code_file_parse(std::string_view text) {
    LineReader reader(text);
    std::size_t number = 0;
    if (reader.require("\"flagcode v1\" header", number) != "flagcode v1")
        throw ParseError("expected \"flagcode v1\" header", number);
    const std::string_view field_line = reader.require("a field line", number);
    const Field field = parse_field_line(field_line, number);
    const std::string_view n_line = reader.require("n=<int>", number);
    const std::size_t n = static_cast<std::size_t>(expect_kv(n_line, "n", number));
    if (n == 0) throw ParseError("n must be positive", number);
    const std::string_view dim_line = reader.require("dim=<int>", number);
    const std::size_t dim = static_cast<std::size_t>(expect_kv(dim_line, "dim", number));

    std::vector<UpperTriangular> basis;
    for (std::size_t b = 0; b < dim; ++b) {
        const std::string_view line = reader.require("a basis matrix", number);
        try {
            basis.push_back(triangular_from_text(line, field, n));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), number);
        }
    }
    reader.require_end("code file");
    return FlagRankCode(field, n, std::move(basis));
}

std::string flag_file_text(const DegenerateFlag& flag) {
    std::ostringstream out;
    out << "flag v1\n" << flag.field().to_string() << "\nn=" << flag.n() << "\n";
    for (std::size_t i = 0; i < flag.n(); ++i) {
        out << "component " << (i + 1) << "\n";
        const MatrixF& basis = flag.component(i).basis();
        for (std::size_t r = 0; r < basis.rows(); ++r) {
            std::ostringstream row;
            append_csv(row, row_codes(basis, r));
            out << row.str() << "\n";
        }
    }
    return out.str();
}

ParsedFlag flag_file_parse(std::string_view text) {
    LineReader reader(text);
    std::size_t number = 0;
    std::string_view line;
    // Skip any preamble (e.g. the packet listing of an encode run).
    bool found = false;
    while (reader.next(line, number)) {
        if (line == "flag v1") {
            found = true;
            break;
        }
    }
    if (!found) throw ParseError("missing \"flag v1\" header");

    const std::string_view field_line = reader.require("a field line", number);
    const Field field = parse_field_line(field_line, number);
    const std::string_view n_line = reader.require("n=<int>", number);
    const std::size_t n = static_cast<std::size_t>(expect_kv(n_line, "n", number));
    if (n == 0) throw ParseError("n must be positive", number);

    std::vector<Subspace> components;
    std::string_view pending;
    std::size_t pending_number = 0;
    bool have_pending = reader.next(pending, pending_number);
    for (std::size_t i = 1; i <= n; ++i) {
        if (!have_pending)
            throw ParseError("unexpected end of input, expected component " + std::to_string(i));
        if (pending != "component " + std::to_string(i))
            throw ParseError("expected \"component " + std::to_string(i) + "\"", pending_number);

        std::vector<std::vector<std::uint32_t>> rows;
        while ((have_pending = reader.next(pending, pending_number))) {
            if (pending.substr(0, 10) == "component ") break;
            std::vector<std::uint32_t> row = parse_row(pending, field, pending_number);
            if (row.size() > n + 1)
                throw ParseError("row has " + std::to_string(row.size()) +
                                 " entries, expected at most " + std::to_string(n + 1),
                                 pending_number);
            row.resize(n + 1, 0);
            rows.push_back(std::move(row));
        }
        if (rows.empty())
            throw ParseError("component " + std::to_string(i) + " has no rows");
        MatrixF m(field, rows.size(), n + 1);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c <= n; ++c) m.set_code(r, c, rows[r][c]);
        components.push_back(Subspace::from_rows(m));
    }
    if (have_pending)
        throw ParseError("unexpected trailing content in flag file", pending_number);
    return ParsedFlag{field, n, std::move(components)};
}

Topology topology_file_parse(std::string_view text) {
    LineReader reader(text);
    std::vector<TopologyNode> nodes;
    struct PendingEdge {
        std::string from, to;
        double erasure_p, corruption_p;
        std::size_t line;
    };
    std::vector<PendingEdge> pending;

    const auto parse_prob = [](std::string_view token, std::size_t line) {
        const std::string s(trim(token));
        if (s.empty()) throw ParseError("missing probability", line);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size())
            throw ParseError("bad probability \"" + s + "\"", line);
        if (!(v >= 0.0 && v <= 1.0))
            throw ParseError("probability " + s + " outside [0, 1]", line);
        return v;
    };

    std::string_view line;
    std::size_t number = 0;
    while (reader.next(line, number)) {
        std::vector<std::string_view> tokens;
        for (std::string_view t : split(line, ' ')) {
            if (!trim(t).empty()) tokens.push_back(trim(t));
        }
        if (tokens[0] == "node") {
            if (tokens.size() != 3) throw ParseError("expected \"node <name> <role>\"", number);
            NodeRole role;
            if (tokens[2] == "source") role = NodeRole::source;
            else if (tokens[2] == "relay") role = NodeRole::relay;
            else if (tokens[2] == "sink") role = NodeRole::sink;
            else throw ParseError("unknown role \"" + std::string(tokens[2]) + "\"", number);
            nodes.push_back({std::string(tokens[1]), role});
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 5)
                throw ParseError("expected \"edge <from> <to> <erasure_p> <corruption_p>\"",
                                 number);
            pending.push_back({std::string(tokens[1]), std::string(tokens[2]),
                               parse_prob(tokens[3], number), parse_prob(tokens[4], number),
                               number});
        } else {
            throw ParseError("unknown directive \"" + std::string(tokens[0]) + "\"", number);
        }
    }

    const auto find_node = [&](const std::string& name, std::size_t line) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].name == name) return i;
        }
        throw ParseError("unknown node \"" + name + "\"", line);
    };
    std::vector<TopologyEdge> edges;
    for (const PendingEdge& e : pending) {
        edges.push_back({find_node(e.from, e.line), find_node(e.to, e.line), e.erasure_p,
                         e.corruption_p});
    }
    return Topology(std::move(nodes), std::move(edges));
}

}  // namespace flagnet
