#include "ratlin/io.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace ratlin::io {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void bad(const std::string& what, const std::string& text) {
    throw std::invalid_argument(what + ": '" + text + "'");
}

// One additive term: [coef][*][l[^k]]
struct Term {
    Rat coef{1};
    int power = 0;
};

Term parse_term(const std::string& raw) {
    const std::string t = strip(raw);
    if (t.empty()) bad("empty term", raw);
    Term out;
    std::size_t i = 0;
    // optional coefficient
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
        std::size_t j = i;
        while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
        if (j < t.size() && t[j] == '/') {
            ++j;
            if (j >= t.size() || !std::isdigit(static_cast<unsigned char>(t[j]))) bad("invalid fraction", raw);
            while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
        }
        auto q = parse_rat(t.substr(i, j - i));
        if (!q) bad("invalid coefficient", raw);
        out.coef = *q;
        i = j;
        if (i < t.size() && t[i] == '*') ++i;
    }
    if (i == t.size()) {
        if (std::isdigit(static_cast<unsigned char>(t[0]))) return out;  // pure constant
        bad("invalid term", raw);
    }
    if (t[i] != 'l') bad("expected variable 'l'", raw);
    ++i;
    out.power = 1;
    if (i < t.size() && t[i] == '^') {
        ++i;
        if (i >= t.size()) bad("missing exponent", raw);
        std::size_t j = i;
        while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
        if (j == i || j != t.size()) bad("invalid exponent", raw);
        out.power = std::stoi(t.substr(i, j - i));
    } else if (i != t.size()) {
        bad("trailing characters in term", raw);
    }
    return out;
}

}  // namespace

Poly parse_poly(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) bad("empty polynomial", text);
    Poly acc;
    std::size_t start = 0;
    Rat sign(1);
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? Rat(-1) : Rat(1);
        start = 1;
    }
    std::size_t i = start;
    for (; i <= s.size(); ++i) {
        if (i < s.size() && s[i] != '+' && s[i] != '-') continue;
        const Term term = parse_term(s.substr(start, i - start));
        acc += Poly::monomial(sign * term.coef, term.power);
        if (i < s.size()) {
            sign = s[i] == '-' ? Rat(-1) : Rat(1);
            start = i + 1;
        }
    }
    return acc;
}

RatFun parse_ratfun(const std::string& text) {
    // Locate a top-level separator: '/' not directly flanked by digits.
    std::vector<std::size_t> seps;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '/') continue;
        const bool digit_before = i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]));
        const bool digit_after = i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]));
        if (!(digit_before && digit_after)) seps.push_back(i);
    }
    if (seps.empty()) return RatFun{parse_poly(text)};
    if (seps.size() > 1) bad("multiple '/' separators", text);
    const Poly num = parse_poly(text.substr(0, seps[0]));
    const Poly den = parse_poly(text.substr(seps[0] + 1));
    return {num, den};
}

namespace {

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        return s;
    }
    return {};
}

std::vector<std::string> split_entries(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ';') {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    return out;
}

struct Header {
    std::string kind;
    std::size_t rows = 0, cols = 0;
};

Header parse_header(const std::string& line) {
    std::istringstream is(line);
    Header h;
    long long r = -1, c = -1;
    is >> h.kind >> r >> c;
    if (is.fail() || r < 0 || c < 0) bad("invalid matrix header", line);
    h.rows = static_cast<std::size_t>(r);
    h.cols = static_cast<std::size_t>(c);
    return h;
}

std::vector<std::size_t> parse_index_list(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::size_t> out;
    long long v;
    while (is >> v) {
        if (v < 1) throw std::invalid_argument("state indices are 1-based");
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    return out;
}

}  // namespace

PolyMatrix parse_polymatrix(std::istream& in) {
    const Header h = parse_header(next_content_line(in));
    if (h.kind != "polymatrix") bad("expected polymatrix header", h.kind);
    PolyMatrix m(h.rows, h.cols);
    for (std::size_t i = 0; i < h.rows; ++i) {
        const std::string line = next_content_line(in);
        const auto entries = split_entries(line);
        if (entries.size() != h.cols) bad("wrong entry count in row", line);
        for (std::size_t j = 0; j < h.cols; ++j) {
            const std::string& e = entries[j];
            m.at(i, j) = e == "0" ? Poly::zero() : parse_poly(e);
        }
    }
    return m;
}

RatMatrix parse_ratmatrix(std::istream& in) {
    const Header h = parse_header(next_content_line(in));
    if (h.kind != "ratmatrix") bad("expected ratmatrix header", h.kind);
    RatMatrix m(h.rows, h.cols);
    for (std::size_t i = 0; i < h.rows; ++i) {
        const std::string line = next_content_line(in);
        const auto entries = split_entries(line);
        if (entries.size() != h.cols) bad("wrong entry count in row", line);
        for (std::size_t j = 0; j < h.cols; ++j) m.at(i, j) = parse_ratfun(entries[j]);
    }
    return m;
}

SystemMatrix parse_psm(std::istream& in) {
    const PolyMatrix P = parse_polymatrix(in);
    std::vector<std::size_t> srows, scols;
    bool have_rows = false, have_cols = false;
    std::string line;
    while (!(line = next_content_line(in)).empty()) {
        if (line.rfind("staterows:", 0) == 0) {
            srows = parse_index_list(line.substr(10));
            have_rows = true;
        } else if (line.rfind("statecols:", 0) == 0) {
            scols = parse_index_list(line.substr(10));
            have_cols = true;
        } else {
            bad("unexpected line in system matrix file", line);
        }
        if (have_rows && have_cols) break;
    }
    if (!have_rows || !have_cols) throw std::invalid_argument("missing staterows/statecols lines");
    return make_psm(P, srows, scols);
}

void write_polymatrix(std::ostream& out, const PolyMatrix& m) {
    out << "polymatrix " << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << " ; ";
            out << poly_to_string(m.at(i, j));
        }
        out << "\n";
    }
}

void write_ratmatrix(std::ostream& out, const RatMatrix& m) {
    out << "ratmatrix " << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << " ; ";
            out << ratfun_to_string(m.at(i, j));
        }
        out << "\n";
    }
}

void write_psm(std::ostream& out, const SystemMatrix& psm) {
    write_polymatrix(out, psm.matrix());
    out << "staterows:";
    for (std::size_t i : psm.state_rows()) out << " " << i + 1;
    out << "\nstatecols:";
    for (std::size_t j : psm.state_cols()) out << " " << j + 1;
    out << "\n";
}

std::string to_text(const PolyMatrix& m) {
    std::ostringstream os;
    write_polymatrix(os, m);
    return os.str();
}

std::string to_text(const RatMatrix& m) {
    std::ostringstream os;
    write_ratmatrix(os, m);
    return os.str();
}

std::string to_text(const SystemMatrix& psm) {
    std::ostringstream os;
    write_psm(os, psm);
    return os.str();
}

PolyMatrix parse_polymatrix_text(const std::string& text) {
    std::istringstream is(text);
    return parse_polymatrix(is);
}

RatMatrix parse_ratmatrix_text(const std::string& text) {
    std::istringstream is(text);
    return parse_ratmatrix(is);
}

SystemMatrix parse_psm_text(const std::string& text) {
    std::istringstream is(text);
    return parse_psm(is);
}

Region parse_region(const std::string& text) {
    const std::string s = strip(text);
    if (s == "all") return Region::all();
    auto parse_set = [&](const std::string& body) {
        std::vector<Rat> pts;
        std::string cur;
        for (char c : body) {
            if (c == ',') {
                if (!strip(cur).empty()) pts.push_back(parse_rat_or_throw(strip(cur)));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!strip(cur).empty()) pts.push_back(parse_rat_or_throw(strip(cur)));
        return pts;
    };
    for (const std::string prefix : {"only:{", "except:{"}) {
        if (s.rfind(prefix, 0) == 0 && s.back() == '}') {
            auto pts = parse_set(s.substr(prefix.size(), s.size() - prefix.size() - 1));
            return prefix[0] == 'o' ? Region::only(std::move(pts)) : Region::except(std::move(pts));
        }
    }
    bad("invalid region", text);
}

ParamFile parse_param_file(std::istream& in) {
    ParamFile pf;
    std::string line;
    std::string pending_matrix;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string s = strip(line);
        if (s.empty()) continue;
        const auto colon = s.find(':');
        if (colon != std::string::npos && s.find_first_of(" \t") > colon) {
            const std::string key = strip(s.substr(0, colon));
            const std::string rest = strip(s.substr(colon + 1));
            if (rest.empty()) {
                pending_matrix = key;
                pf.matrices[key];  // may stay empty (0 x 0)
            } else {
                pending_matrix.clear();
                std::istringstream is(rest);
                std::string tok;
                while (is >> tok) pf.lists[key].push_back(tok);
            }
            continue;
        }
        if (pending_matrix.empty()) throw std::invalid_argument("unexpected line in parameter file: " + s);
        std::istringstream is(s);
        std::vector<Rat> row;
        std::string tok;
        while (is >> tok) row.push_back(parse_rat_or_throw(tok));
        pf.matrices[pending_matrix].push_back(std::move(row));
    }
    return pf;
}

namespace {

ConstMatrix require_matrix(const ParamFile& pf, const std::string& key) {
    const auto it = pf.matrices.find(key);
    if (it == pf.matrices.end()) throw std::invalid_argument("missing matrix block: " + key);
    return it->second;
}

std::vector<std::string> require_list(const ParamFile& pf, const std::string& key) {
    const auto it = pf.lists.find(key);
    if (it == pf.lists.end()) throw std::invalid_argument("missing list: " + key);
    return it->second;
}

std::vector<Rat> to_rats(const std::vector<std::string>& toks) {
    std::vector<Rat> out;
    for (const auto& t : toks) out.push_back(parse_rat_or_throw(t));
    return out;
}

std::vector<Point> to_points(const std::vector<std::string>& toks) {
    std::vector<Point> out;
    for (const auto& t : toks) {
        if (t == "inf") {
            out.push_back(Point::infinity());
        } else {
            out.push_back(Point::at(parse_rat_or_throw(t)));
        }
    }
    return out;
}

}  // namespace

SaadParams parse_saad_params(const ParamFile& pf) {
    SaadParams p;
    p.sigma = to_rats(require_list(pf, "sigma"));
    p.A0 = require_matrix(pf, "A0");
    p.B0 = require_matrix(pf, "B0");
    for (std::size_t k = 1; k <= p.sigma.size(); ++k)
        p.B.push_back(require_matrix(pf, "B" + std::to_string(k)));
    return p;
}

SuBaiParams parse_subai_params(const ParamFile& pf) {
    SuBaiParams p;
    p.A = require_matrix(pf, "A");
    p.B = require_matrix(pf, "B");
    p.C = require_matrix(pf, "C");
    for (std::size_t k = 0;; ++k) {
        const auto it = pf.matrices.find("D" + std::to_string(k));
        if (it == pf.matrices.end()) break;
        p.D.push_back(it->second);
    }
    if (p.D.empty()) throw std::invalid_argument("missing matrix block: D0");
    return p;
}

namespace {

NleigsParams parse_nleigs_base(const ParamFile& pf) {
    NleigsParams p;
    p.sigma = to_rats(require_list(pf, "sigma"));
    p.xi = to_points(require_list(pf, "xi"));
    p.beta = to_rats(require_list(pf, "beta"));
    return p;
}

}  // namespace

NleigsBasic parse_nleigs_params(const ParamFile& pf) {
    NleigsBasic b;
    b.params = parse_nleigs_base(pf);
    for (std::size_t k = 0; k <= b.params.order(); ++k)
        b.D.push_back(require_matrix(pf, "D" + std::to_string(k)));
    return b;
}

NleigsLowRank parse_nleigs_lowrank_params(const ParamFile& pf) {
    NleigsLowRank lr;
    lr.params = parse_nleigs_base(pf);
    const auto split_toks = require_list(pf, "split");
    if (split_toks.size() != 1) throw std::invalid_argument("split takes one value");
    lr.split = static_cast<std::size_t>(std::stoul(split_toks[0]));
    lr.Ut = require_matrix(pf, "Ut");
    lr.rank = lr.Ut.empty() ? 0 : lr.Ut[0].size();
    for (std::size_t k = 0; k <= lr.split; ++k) lr.Dt.push_back(require_matrix(pf, "Dt" + std::to_string(k)));
    for (std::size_t k = lr.split + 1; k <= lr.params.order(); ++k)
        lr.Lt.push_back(require_matrix(pf, "Lt" + std::to_string(k)));
    return lr;
}

}  // namespace ratlin::io
