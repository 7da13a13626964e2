#pragma once

// Line-oriented experiment config. Directives:
//   dim N
//   metric identity | metric rows        (rows: N lines of N decimals)
//   mode classical|quantum
//   rate paper|matched
//   hamiltonian … end / observable … end (term lines: p i1 … ip c)
//   time t0 t1 steps
//   hbar x
//   seed s
// '#' starts a comment. Duplicate blades inside a block are summed; terms are
// kept in canonical (grade, index) order so parse → serialize → parse is the
// identity.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fermionic/dynamics.hpp"
#include "fermionic/errors.hpp"
#include "fermionic/metric.hpp"
#include "fermionic/multivector.hpp"

namespace fermionic {

struct ConfigParseError : Error {
    int line;
    ConfigParseError(int line_no, const std::string& what)
        : Error("config line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct ConfigTerm {
    std::vector<int> indices;  // strictly ascending, 1-based
    double coeff = 0.0;

    friend bool operator==(const ConfigTerm& a, const ConfigTerm& b) {
        return a.indices == b.indices && a.coeff == b.coeff;
    }
};

struct ExperimentConfig {
    int dim = 0;
    bool metric_identity = true;
    std::vector<double> gram;  // row-major dim*dim when !metric_identity
    Mode mode = Mode::classical;
    RateConvention rate = RateConvention::paper;
    std::vector<ConfigTerm> hamiltonian;
    bool has_hamiltonian = false;
    std::vector<std::vector<ConfigTerm>> observables;
    double t0 = 0.0, t1 = 0.0;
    int steps = 0;
    bool has_time = false;
    double hbar = 1.0;
    std::uint64_t seed = 0;

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
        return a.dim == b.dim && a.metric_identity == b.metric_identity && a.gram == b.gram &&
               a.mode == b.mode && a.rate == b.rate && a.hamiltonian == b.hamiltonian &&
               a.has_hamiltonian == b.has_hamiltonian && a.observables == b.observables &&
               a.t0 == b.t0 && a.t1 == b.t1 && a.steps == b.steps && a.has_time == b.has_time &&
               a.hbar == b.hbar && a.seed == b.seed;
    }

    Metric metric() const {
        if (metric_identity) return Metric::identity(dim);
        Mat g(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                g(i, j) = gram[static_cast<std::size_t>(i) * dim + j];
        return Metric(g);
    }

    static Multivector to_multivector(int dim, const std::vector<ConfigTerm>& terms) {
        Multivector out(dim);
        for (const auto& t : terms)
            out += Multivector::blade(dim, t.indices, t.coeff);
        return out;
    }

    Multivector hamiltonian_multivector() const { return to_multivector(dim, hamiltonian); }
    Multivector observable_multivector(std::size_t k = 0) const {
        return to_multivector(dim, observables.at(k));
    }
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline double parse_double(const std::string& tok, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ConfigParseError(line_no, "expected a number, got '" + tok + "'");
    }
}

inline long parse_long(const std::string& tok, int line_no) {
    try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ConfigParseError(line_no, "expected an integer, got '" + tok + "'");
    }
}

// Canonical term order: by grade, then lexicographic indices; duplicates summed.
inline std::vector<ConfigTerm> canonicalize_terms(const std::vector<ConfigTerm>& terms) {
    std::map<std::vector<int>, double> acc;
    for (const auto& t : terms) {
        auto key = t.indices;
        key.insert(key.begin(), static_cast<int>(t.indices.size()));
        acc[key] += t.coeff;
    }
    std::vector<ConfigTerm> out;
    for (const auto& [key, coeff] : acc)
        out.push_back({std::vector<int>(key.begin() + 1, key.end()), coeff});
    return out;
}

inline std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string raw;
    int line_no = 0;
    bool seen_dim = false;

    auto next_tokens = [&](std::vector<std::string>& out) -> bool {
        while (std::getline(in, raw)) {
            ++line_no;
            out = detail::tokens_of(detail::strip_comment(raw));
            if (!out.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> tok;
    while (next_tokens(tok)) {
        const std::string& head = tok[0];
        if (head == "dim") {
            if (tok.size() != 2) throw ConfigParseError(line_no, "usage: dim N");
            const long n = detail::parse_long(tok[1], line_no);
            if (n < 1 || n > kMaxDim)
                throw ConfigParseError(line_no, "dim must be in 1.." + std::to_string(kMaxDim));
            cfg.dim = static_cast<int>(n);
            seen_dim = true;
        } else if (head == "metric") {
            if (tok.size() != 2 || (tok[1] != "identity" && tok[1] != "rows"))
                throw ConfigParseError(line_no, "usage: metric identity|rows");
            if (tok[1] == "identity") {
                cfg.metric_identity = true;
                cfg.gram.clear();
            } else {
                if (!seen_dim) throw ConfigParseError(line_no, "metric rows requires dim first");
                cfg.metric_identity = false;
                cfg.gram.assign(static_cast<std::size_t>(cfg.dim) * cfg.dim, 0.0);
                for (int r = 0; r < cfg.dim; ++r) {
                    std::vector<std::string> row;
                    if (!next_tokens(row))
                        throw ConfigParseError(line_no, "unexpected end of file in metric rows");
                    if (static_cast<int>(row.size()) != cfg.dim)
                        throw ConfigParseError(line_no, "expected " + std::to_string(cfg.dim) +
                                                            " entries in metric row");
                    for (int c = 0; c < cfg.dim; ++c)
                        cfg.gram[static_cast<std::size_t>(r) * cfg.dim + c] =
                            detail::parse_double(row[static_cast<std::size_t>(c)], line_no);
                }
            }
        } else if (head == "mode") {
            if (tok.size() != 2 || (tok[1] != "classical" && tok[1] != "quantum"))
                throw ConfigParseError(line_no, "usage: mode classical|quantum");
            cfg.mode = tok[1] == "classical" ? Mode::classical : Mode::quantum;
        } else if (head == "rate") {
            if (tok.size() != 2 || (tok[1] != "paper" && tok[1] != "matched"))
                throw ConfigParseError(line_no, "usage: rate paper|matched");
            cfg.rate = tok[1] == "paper" ? RateConvention::paper : RateConvention::classical_match;
        } else if (head == "hamiltonian" || head == "observable") {
            if (!seen_dim) throw ConfigParseError(line_no, head + " block requires dim first");
            if (tok.size() != 1) throw ConfigParseError(line_no, head + " starts a block by itself");
            std::vector<ConfigTerm> terms;
            bool closed = false;
            std::vector<std::string> body;
            while (next_tokens(body)) {
                if (body.size() == 1 && body[0] == "end") {
                    closed = true;
                    break;
                }
                const long grade = detail::parse_long(body[0], line_no);
                if (grade < 0 || grade > cfg.dim)
                    throw ConfigParseError(line_no, "term grade must be in 0.." +
                                                        std::to_string(cfg.dim));
                if (static_cast<long>(body.size()) != grade + 2)
                    throw ConfigParseError(line_no, "term line must read: p i1 … ip c");
                ConfigTerm term;
                int prev = 0;
                for (long k = 0; k < grade; ++k) {
                    const long idx = detail::parse_long(body[static_cast<std::size_t>(1 + k)], line_no);
                    if (idx < 1 || idx > cfg.dim)
                        throw ConfigParseError(line_no, "blade index out of range 1.." +
                                                            std::to_string(cfg.dim));
                    if (idx <= prev)
                        throw ConfigParseError(line_no, "blade indices must be strictly ascending");
                    term.indices.push_back(static_cast<int>(idx));
                    prev = static_cast<int>(idx);
                }
                term.coeff = detail::parse_double(body.back(), line_no);
                terms.push_back(std::move(term));
            }
            if (!closed) throw ConfigParseError(line_no, "unterminated " + head + " block");
            if (head == "hamiltonian") {
                if (cfg.has_hamiltonian)
                    throw ConfigParseError(line_no, "duplicate hamiltonian block");
                cfg.hamiltonian = detail::canonicalize_terms(terms);
                cfg.has_hamiltonian = true;
            } else {
                cfg.observables.push_back(detail::canonicalize_terms(terms));
            }
        } else if (head == "time") {
            if (tok.size() != 4) throw ConfigParseError(line_no, "usage: time t0 t1 steps");
            cfg.t0 = detail::parse_double(tok[1], line_no);
            cfg.t1 = detail::parse_double(tok[2], line_no);
            const long steps = detail::parse_long(tok[3], line_no);
            if (!(cfg.t1 > cfg.t0)) throw ConfigParseError(line_no, "time requires t1 > t0");
            if (steps < 1) throw ConfigParseError(line_no, "steps must be positive");
            cfg.steps = static_cast<int>(steps);
            cfg.has_time = true;
        } else if (head == "hbar") {
            if (tok.size() != 2) throw ConfigParseError(line_no, "usage: hbar x");
            cfg.hbar = detail::parse_double(tok[1], line_no);
            if (cfg.hbar < 0.0) throw ConfigParseError(line_no, "hbar must be nonnegative");
        } else if (head == "seed") {
            if (tok.size() != 2) throw ConfigParseError(line_no, "usage: seed s");
            try {
                cfg.seed = std::stoull(tok[1]);
            } catch (const std::exception&) {
                throw ConfigParseError(line_no, "expected an unsigned integer seed");
            }
        } else {
            throw ConfigParseError(line_no, "unknown directive '" + head + "'");
        }
    }
    if (!seen_dim) throw ConfigParseError(line_no, "missing dim directive");
    return cfg;
}

inline std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "dim " << cfg.dim << "\n";
    if (cfg.metric_identity) {
        out << "metric identity\n";
    } else {
        out << "metric rows\n";
        for (int r = 0; r < cfg.dim; ++r) {
            for (int c = 0; c < cfg.dim; ++c)
                out << (c ? " " : "")
                    << detail::g17(cfg.gram[static_cast<std::size_t>(r) * cfg.dim + c]);
            out << "\n";
        }
    }
    out << "mode " << (cfg.mode == Mode::classical ? "classical" : "quantum") << "\n";
    out << "rate " << (cfg.rate == RateConvention::paper ? "paper" : "matched") << "\n";
    out << "hbar " << detail::g17(cfg.hbar) << "\n";
    out << "seed " << cfg.seed << "\n";
    if (cfg.has_time)
        out << "time " << detail::g17(cfg.t0) << " " << detail::g17(cfg.t1) << " " << cfg.steps
            << "\n";
    auto block = [&](const char* name, const std::vector<ConfigTerm>& terms) {
        out << name << "\n";
        for (const auto& t : terms) {
            out << t.indices.size();
            for (int i : t.indices) out << " " << i;
            out << " " << detail::g17(t.coeff) << "\n";
        }
        out << "end\n";
    };
    if (cfg.has_hamiltonian) block("hamiltonian", cfg.hamiltonian);
    for (const auto& obs : cfg.observables) block("observable", obs);
    return out.str();
}

// EvolutionSpec from a parsed config. Classical hamiltonians must be pure
// 2-forms (ModeMismatch otherwise); quantum anti-hermiticity is validated by
// evolve_observable itself.
inline EvolutionSpec to_evolution_spec(const ExperimentConfig& cfg) {
    if (!cfg.has_hamiltonian) throw ConfigParseError(0, "missing hamiltonian block");
    if (cfg.observables.empty()) throw ConfigParseError(0, "missing observable block");
    if (!cfg.has_time) throw ConfigParseError(0, "missing time directive");

    const Metric m = cfg.metric();
    const Multivector h = cfg.hamiltonian_multivector();
    std::variant<Generator, Multivector> ham = h;
    if (cfg.mode == Mode::classical) {
        for (const auto& t : cfg.hamiltonian)
            if (t.indices.size() != 2)
                throw ModeMismatch("classical hamiltonians are 2-forms");
        ham = two_form_to_generator(h, m);
    }
    return EvolutionSpec{m,        ham,      cfg.observable_multivector(0),
                         cfg.t0,   cfg.t1,   cfg.steps,
                         cfg.mode, cfg.rate, cfg.hbar};
}

}  // namespace fermionic
