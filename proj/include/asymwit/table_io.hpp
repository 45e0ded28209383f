#pragma once

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "witness.hpp"

namespace asymwit {

/// Reads a 6x6 expectation table: 36 whitespace-separated decimal reals in
/// row-major order, `#` starts a comment until end of line, `nan` marks an
/// unused cell.
inline ExpectationTable read_expectation_table(std::istream& in) {
    std::string stripped;
    for (std::string line; std::getline(in, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        stripped += line;
        stripped += ' ';
    }
    std::istringstream tokens(stripped);
    // strtod handles "nan"; istream double extraction does not
    const auto parse = [](const std::string& tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            throw std::invalid_argument("expectation table: bad number '" + tok + "'");
        return v;
    };
    ExpectationTable table{};
    std::string tok;
    for (int x = 0; x < 6; ++x) {
        for (int y = 0; y < 6; ++y) {
            if (!(tokens >> tok))
                throw std::invalid_argument("expectation table: expected 36 numbers");
            const double v = parse(tok);
            if (std::isfinite(v) && std::fabs(v) > 1.0 + 1e-9)
                throw std::invalid_argument("expectation table: entry outside [-1, 1]");
            table[x][y] = v;
        }
    }
    if (tokens >> tok)
        throw std::invalid_argument("expectation table: trailing data after 36 numbers");
    return table;
}

inline void write_expectation_table(std::ostream& out, const ExpectationTable& table) {
    char buf[32];
    for (int x = 0; x < 6; ++x) {
        for (int y = 0; y < 6; ++y) {
            std::snprintf(buf, sizeof buf, "%.17g", table[x][y]);
            out << buf << (y == 5 ? "\n" : " ");
        }
    }
}

/// Checks that every cell the witness reads is a finite value in [-1, 1].
inline void validate_used_cells(const WitnessSpec& spec, const ExpectationTable& e) {
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            if (spec.w[x][y] != 0.0 &&
                (!std::isfinite(e[x][y]) || std::fabs(e[x][y]) > 1.0 + 1e-9))
                throw std::invalid_argument(
                    "expectation table: cell (" + std::to_string(x + 1) + "," +
                    std::to_string(y + 1) + ") is used by the witness but not a value in [-1, 1]");
}

}  // namespace asymwit
