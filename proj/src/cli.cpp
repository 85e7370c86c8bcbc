#include <folbound/cli.hpp>

#include <folbound/errors.hpp>
#include <folbound/indices.hpp>
#include <folbound/jets.hpp>
#include <folbound/theorems.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace folbound
{

namespace
{

struct Pos
{
    int line = 1;
    int col = 1;
};

// Positions of every value of a parsed document. The text is walked along
// the DOM, so it must be the text the DOM was parsed from.
class Locator
{
public:
    Locator(const std::string &text, const Json &root) : t_(text)
    {
        walk(root);
    }

    Pos at(const Json &v) const
    {
        auto it = pos_.find(&v);
        return it == pos_.end() ? Pos{} : it->second;
    }

    Pos offset(std::size_t k) const
    {
        Pos p;
        for (std::size_t i = 0; i < k && i < t_.size(); ++i) {
            if (t_[i] == '\n') {
                ++p.line;
                p.col = 1;
            } else {
                ++p.col;
            }
        }
        return p;
    }

    std::size_t start(const Json &v) const
    {
        auto it = off_.find(&v);
        return it == off_.end() ? 0 : it->second;
    }

private:
    void ws()
    {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) {
            ++i_;
        }
    }

    std::string string_token()
    {
        std::string out;
        ++i_;
        while (i_ < t_.size() && t_[i_] != '"') {
            if (t_[i_] == '\\') {
                ++i_;
            }
            out += t_[i_++];
        }
        ++i_;
        return out;
    }

    void walk(const Json &v)
    {
        ws();
        off_[&v] = i_;
        pos_[&v] = offset(i_);
        if (v.is_object()) {
            ++i_;
            for (;;) {
                ws();
                if (t_[i_] == '}') {
                    ++i_;
                    return;
                }
                if (t_[i_] == ',') {
                    ++i_;
                    continue;
                }
                const std::string key = string_token();
                ws();
                ++i_; // ':'
                walk(v.at(key));
            }
        }
        if (v.is_array()) {
            ++i_;
            for (const auto &e : v) {
                walk(e);
                ws();
                if (t_[i_] == ',') {
                    ++i_;
                }
            }
            ws();
            ++i_; // ']'
            return;
        }
        if (v.is_string()) {
            string_token();
            return;
        }
        while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != ',' && t_[i_] != ']' &&
               t_[i_] != '}') {
            ++i_;
        }
    }

    const std::string &t_;
    std::size_t i_ = 0;
    std::map<const Json *, Pos> pos_;
    std::map<const Json *, std::size_t> off_;
};

class CaseReader
{
public:
    CaseReader(const std::string &text, const std::string &source, const Json &root)
        : source_(source), loc_(text, root), root_(root)
    {
    }

    [[noreturn]] void error(const Json &v, const std::string &msg, std::size_t extra = 0) const
    {
        Pos p = loc_.at(v);
        if (extra > 0) {
            p = loc_.offset(loc_.start(v) + extra);
        }
        fail(ErrorKind::Parse, source_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.col) + ": " + msg);
    }

    const Json &field(const Json &obj, const char *key) const
    {
        if (!obj.is_object()) {
            error(obj, "expected an object");
        }
        if (!obj.contains(key)) {
            error(obj, std::string("missing field \"") + key + "\"");
        }
        return obj.at(key);
    }

    long integer(const Json &v, const char *what) const
    {
        if (!v.is_number_integer()) {
            error(v, std::string("expected an integer for ") + what);
        }
        return v.get<long>();
    }

    const Json &array(const Json &v, const char *what) const
    {
        if (!v.is_array()) {
            error(v, std::string("expected an array for ") + what);
        }
        return v;
    }

    std::string string(const Json &v, const char *what) const
    {
        if (!v.is_string()) {
            error(v, std::string("expected a string for ") + what);
        }
        return v.get<std::string>();
    }

    CycloNum coefficient(const Json &v) const
    {
        if (v.is_number_integer()) {
            return CycloNum(v.get<long>());
        }
        if (v.is_number_float()) {
            error(v, "floating-point coefficient; use INT or INT/POSINT");
        }
        if (v.is_array()) {
            std::vector<Rat> c;
            for (const auto &e : v) {
                const CycloNum x = coefficient(e);
                if (!x.is_rational()) {
                    error(e, "nested cyclotomic coefficient");
                }
                c.push_back(x.rational_part());
            }
            return CycloNum::from_poly(c, order_);
        }
        if (!v.is_string()) {
            error(v, "expected a coefficient");
        }
        const std::string s = v.get<std::string>();
        std::size_t col = 0;
        std::string why;
        auto c = parse_coefficient(s, order_, &col, &why);
        if (!c) {
            error(v, "bad coefficient \"" + s + "\": " + why, col + 1);
        }
        return *c;
    }

    BiPoly monomials(const Json &v) const
    {
        std::map<Monomial, CycloNum> terms;
        for (const auto &m : array(v, "a monomial list")) {
            if (!m.is_array() || m.size() != 3) {
                error(m, "monomial must be [i, j, coefficient]");
            }
            const long i = integer(m[0], "an exponent");
            const long j = integer(m[1], "an exponent");
            if (i < 0 || j < 0) {
                error(m, "negative exponent");
            }
            terms[{static_cast<int>(i), static_cast<int>(j)}] += coefficient(m[2]);
        }
        return BiPoly(terms);
    }

    UPoly upoly(const Json &v) const
    {
        std::vector<CycloNum> c;
        for (const auto &t : array(v, "a series")) {
            if (!t.is_array() || t.size() != 2) {
                error(t, "series term must be [exponent, coefficient]");
            }
            const long e = integer(t[0], "an exponent");
            if (e < 0) {
                error(t, "negative exponent");
            }
            if (c.size() <= static_cast<std::size_t>(e)) {
                c.resize(static_cast<std::size_t>(e) + 1);
            }
            c[static_cast<std::size_t>(e)] += coefficient(t[1]);
        }
        return UPoly(c);
    }

    PuiseuxBranch branch(const Json &b) const
    {
        const std::string name = string(field(b, "name"), "name");
        const long n = integer(field(b, "n"), "n");
        if (n < 1) {
            error(field(b, "n"), "n must be positive");
        }
        const UPoly c = upoly(field(b, "series"));
        try {
            return make_branch(name, static_cast<int>(n), USeries(c.coeffs()));
        } catch (const Error &e) {
            error(b, std::string("branch ") + name + ": " + e.what());
        }
    }

    RationalBranch rational_branch(const Json &b) const
    {
        if (b.contains("n")) {
            return rational_of(branch(b));
        }
        RationalBranch r;
        r.name = string(field(b, "name"), "name");
        r.x = upoly(field(b, "x"));
        r.y = upoly(field(b, "y"));
        if (b.contains("den")) {
            r.den = upoly(b.at("den"));
        }
        return r;
    }

    CaseFile read()
    {
        CaseFile c;
        c.source = source_;
        const Json &root = root_;
        if (!root.is_object()) {
            error(root, "case file must be an object");
        }
        const long order = integer(field(field(root, "field"), "cyclotomic_order"), "cyclotomic_order");
        if (order < 1 || order > 1000) {
            error(field(root, "field"), "cyclotomic_order must be in 1..1000");
        }
        c.cyclotomic_order = static_cast<unsigned>(order);
        order_ = c.cyclotomic_order;
        for (const auto &b : array(field(root, "branches"), "branches")) {
            c.branches.push_back(branch(b));
        }
        if (root.contains("foliation")) {
            const Json &f = root.at("foliation");
            c.foliation = Field{monomials(field(f, "a")), monomials(field(f, "b"))};
        }
        if (root.contains("global")) {
            const Json &g = root.at("global");
            GlobalSection s;
            s.f = monomials(field(g, "f"));
            if (g.contains("projective")) {
                if (!g.at("projective").is_boolean()) {
                    error(g.at("projective"), "expected a boolean for projective");
                }
                s.projective = g.at("projective").get<bool>();
            }
            if (g.contains("points")) {
                for (const auto &p : array(g.at("points"), "points")) {
                    GlobalPoint gp;
                    gp.name = p.contains("name") ? string(p.at("name"), "name") : std::string("point");
                    const Json &at = array(field(p, "at"), "at");
                    if (at.size() != 2) {
                        error(at, "point must be [x, y]");
                    }
                    gp.x = coefficient(at[0]);
                    gp.y = coefficient(at[1]);
                    if (p.contains("branches")) {
                        for (const auto &b : array(p.at("branches"), "branches")) {
                            gp.branches.push_back(rational_branch(b));
                        }
                    }
                    s.points.push_back(std::move(gp));
                }
            }
            c.global = std::move(s);
        }
        if (root.contains("checks")) {
            for (const auto &k : array(root.at("checks"), "checks")) {
                const std::string name = string(k, "a check name");
                const auto &names = command_names();
                if (name == "all" || std::find(names.begin(), names.end(), name) == names.end()) {
                    error(k, "unknown check \"" + name + "\"");
                }
                c.checks.push_back(name);
            }
        }
        if (root.contains("options")) {
            const Json &o = root.at("options");
            if (o.contains("truncation_audit_order")) {
                const long k = integer(o.at("truncation_audit_order"), "truncation_audit_order");
                if (k < 1) {
                    error(o.at("truncation_audit_order"), "truncation_audit_order must be positive");
                }
                c.truncation_audit_order = static_cast<int>(k);
            }
            if (o.contains("report_format")) {
                c.report_format = string(o.at("report_format"), "report_format");
                if (c.report_format != "text" && c.report_format != "json") {
                    error(o.at("report_format"), "report_format must be \"text\" or \"json\"");
                }
            }
        }
        return c;
    }

private:
    std::string source_;
    Locator loc_;
    const Json &root_;
    unsigned order_ = 1;
};

} // namespace

std::optional<CycloNum> parse_coefficient(const std::string &text, unsigned order, std::size_t *column, std::string *why)
{
    std::size_t i = 0;
    auto bad = [&](const std::string &msg) -> std::optional<CycloNum> {
        if (column) {
            *column = i;
        }
        if (why) {
            *why = msg;
        }
        return std::nullopt;
    };
    auto skip = [&] {
        while (i < text.size() && text[i] == ' ') {
            ++i;
        }
    };
    auto digits = [&](BigInt &out) {
        const std::size_t s = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i == s) {
            return false;
        }
        out = BigInt(text.substr(s, i - s));
        return true;
    };
    auto rat = [&](Rat &out) -> bool {
        skip();
        bool neg = false;
        if (i < text.size() && text[i] == '-') {
            neg = true;
            ++i;
        }
        BigInt num;
        if (!digits(num)) {
            return false;
        }
        BigInt den = 1;
        if (i < text.size() && text[i] == '/') {
            ++i;
            if (!digits(den)) {
                return false;
            }
            if (den == 0) {
                --i;
                return false;
            }
        }
        out = Rat(neg ? BigInt(-num) : num, den);
        out.canonicalize();
        skip();
        return true;
    };

    skip();
    if (i < text.size() && text[i] == '[') {
        ++i;
        std::vector<Rat> c;
        for (;;) {
            Rat r;
            if (!rat(r)) {
                return bad("expected INT or INT/POSINT");
            }
            c.push_back(r);
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ']') {
                ++i;
                break;
            }
            return bad("expected ',' or ']'");
        }
        skip();
        if (i != text.size()) {
            return bad("trailing characters");
        }
        return CycloNum::from_poly(c, order);
    }
    Rat r;
    if (!rat(r)) {
        return bad("expected INT or INT/POSINT");
    }
    if (i != text.size()) {
        return bad("trailing characters");
    }
    return CycloNum(r);
}

CaseFile parse_case(const std::string &text, const std::string &source)
{
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error &e) {
        Pos p;
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++p.line;
                p.col = 1;
            } else {
                ++p.col;
            }
        }
        std::string what = e.what();
        const auto cut = what.find("syntax error");
        fail(ErrorKind::Parse, source + ":" + std::to_string(p.line) + ":" + std::to_string(p.col) + ": " +
                                   (cut == std::string::npos ? what : what.substr(cut)));
    }
    return CaseReader(text, source, root).read();
}

CaseFile load_case(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::InvalidInput, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_case(ss.str(), path);
}

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names{"invariants", "resolve",  "indices",  "hertling",    "theorem1",
                                                "theorem2",   "theorem3", "theorem4", "diagnostics"};
    return names;
}

} // namespace folbound
