#include "rispaces/json_io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace rispaces {

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
    throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

const json& expect(const json& j, const std::string& field) {
    if (!j.contains(field)) parse_fail(field, "missing");
    return j.at(field);
}

} // namespace

Rat scalar_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
    if (j.is_number_float()) return Rat::from_double(j.get<double>());
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const Error& e) {
            parse_fail(field, e.what());
        }
    }
    parse_fail(field, "expected a number, decimal string or p/q");
}

XRat xscalar_from_json(const json& j, const std::string& field) {
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "Inf"))
        return XRat::inf();
    if (j.is_number_float() && std::isinf(j.get<double>())) return XRat::inf();
    return XRat(scalar_from_json(j, field));
}

namespace {

Piece piece_from_json(const json& j) {
    Rat lo = scalar_from_json(expect(j, "lo"), "lo");
    XRat hi = xscalar_from_json(expect(j, "hi"), "hi");
    std::string kind = expect(j, "kind").get<std::string>();
    const json& params = expect(j, "params");
    if (!params.is_array()) parse_fail("params", "expected an array");
    auto param = [&](std::size_t i) {
        if (i >= params.size()) parse_fail("params", "too few entries");
        return scalar_from_json(params[i], "params");
    };
    bool mirror = j.value("mirror", false);
    if (kind == "const") return Piece::constant(lo, hi, param(0));
    if (kind == "hyp")
        return Piece::hyp(lo, hi, param(0), param(1),
                          params.size() > 2 ? param(2) : Rat(0), mirror);
    if (kind == "pow")
        return Piece::power(lo, hi, param(0), param(1),
                            params.size() > 2 ? param(2) : Rat(0), mirror);
    parse_fail("kind", "unknown piece kind '" + kind + "'");
}

json piece_to_json(const Piece& p) {
    json j;
    j["lo"] = p.lo.str();
    j["hi"] = p.hi.str();
    switch (p.kind) {
        case PieceKind::Const:
            j["kind"] = "const";
            j["params"] = {p.p0.str()};
            break;
        case PieceKind::Hyp:
            j["kind"] = "hyp";
            j["params"] = {p.p0.str(), p.p1.str(), p.p2.str()};
            break;
        case PieceKind::Power:
            j["kind"] = "pow";
            j["params"] = {p.p0.str(), p.p1.str(), p.p2.str()};
            break;
        case PieceKind::CesPow:
            j["kind"] = "ces_pow";
            j["params"] = {p.d_b, p.d_k, p.d_c, p.d_beta, p.d_s};
            break;
        case PieceKind::CesLog:
            j["kind"] = "ces_log";
            j["params"] = {p.d_b, p.d_k, p.d_c, p.d_s};
            break;
    }
    if (p.mirror) j["mirror"] = true;
    return j;
}

SeqTail seq_tail_from_json(const json& j) {
    SeqTail t;
    std::string kind = expect(j, "kind").get<std::string>();
    if (kind == "zero") return t;
    const json& params = expect(j, "params");
    auto param = [&](std::size_t i) {
        if (i >= params.size()) parse_fail("tail.params", "too few entries");
        return scalar_from_json(params[i], "tail.params");
    };
    if (kind == "const") {
        t.kind = SeqTail::Kind::Const;
        t.v = param(0);
        return t;
    }
    if (kind == "hyp") {
        t.kind = SeqTail::Kind::Hyp;
        t.a = param(0);
        t.b = param(1);
        if (params.size() > 2) t.s = param(2);
        return t;
    }
    parse_fail("tail.kind", "unknown tail kind '" + kind + "'");
}

} // namespace

AnyFn fn_from_json(const json& j) {
    Domain d = parse_domain(expect(j, "domain").get<std::string>());
    if (d == Domain::Naturals) {
        std::vector<Rat> head;
        if (j.contains("head")) {
            for (const auto& e : j.at("head")) head.push_back(scalar_from_json(e, "head"));
        }
        SeqTail t;
        if (j.contains("tail")) t = seq_tail_from_json(j.at("tail"));
        return AnyFn(SeqFn(std::move(head), t));
    }
    std::vector<Piece> pieces;
    if (j.contains("pieces")) {
        for (const auto& e : j.at("pieces")) pieces.push_back(piece_from_json(e));
    }
    if (j.contains("tail")) {
        const json& jt = j.at("tail");
        std::string kind = expect(jt, "kind").get<std::string>();
        Rat lo = pieces.empty() ? Rat(0) : pieces.back().hi.finite();
        if (kind != "zero") {
            const json& params = expect(jt, "params");
            auto param = [&](std::size_t i) { return scalar_from_json(params.at(i), "tail"); };
            if (kind == "const") {
                Rat v = param(0);
                if (v.sign() < 0) parse_fail("tail", "constant tail must be >= 0");
                pieces.push_back(Piece::constant(lo, XRat::inf(), v));
            } else if (kind == "hyp") {
                Rat b = param(1);
                if (b.sign() < 0) parse_fail("tail", "hyperbolic tail limit must be >= 0");
                pieces.push_back(Piece::hyp(lo, XRat::inf(), param(0), b,
                                            params.size() > 2 ? param(2) : Rat(0)));
            } else {
                parse_fail("tail.kind", "unknown tail kind '" + kind + "'");
            }
        }
    }
    return AnyFn(PiecewiseFn(d, std::move(pieces)));
}

json fn_to_json(const PiecewiseFn& f) {
    json j;
    j["domain"] = domain_name(f.domain());
    j["pieces"] = json::array();
    for (const auto& p : f.pieces()) {
        if (p.is_zero()) continue;
        j["pieces"].push_back(piece_to_json(p));
    }
    return j;
}

json fn_to_json(const SeqFn& x) {
    json j;
    j["domain"] = "naturals";
    j["head"] = json::array();
    for (const auto& v : x.head()) j["head"].push_back(v.str());
    json t;
    switch (x.tail().kind) {
        case SeqTail::Kind::Zero:
            t["kind"] = "zero";
            break;
        case SeqTail::Kind::Const:
            t["kind"] = "const";
            t["params"] = {x.tail().v.str()};
            break;
        case SeqTail::Kind::Hyp:
            t["kind"] = "hyp";
            t["params"] = {x.tail().a.str(), x.tail().b.str(), x.tail().s.str()};
            break;
        case SeqTail::Kind::Harmonic:
            t["kind"] = "harmonic";
            t["params"] = {x.tail().h_a, x.tail().h_b, x.tail().h_c, x.tail().h_s,
                           x.tail().h_sigma};
            break;
    }
    j["tail"] = t;
    return j;
}

json fn_to_json(const AnyFn& f) {
    if (std::holds_alternative<PiecewiseFn>(f)) return fn_to_json(std::get<PiecewiseFn>(f));
    return fn_to_json(std::get<SeqFn>(f));
}

QuasiConcaveFn phi_from_json(const json& j, bool require_concave) {
    std::vector<Piece> pieces;
    for (const auto& e : expect(j, "pieces")) pieces.push_back(piece_from_json(e));
    double phi0 = xscalar_from_json(expect(j, "phi0"), "phi0").to_double();
    double phi_inf = xscalar_from_json(expect(j, "phiInf"), "phiInf").to_double();
    return QuasiConcaveFn(std::move(pieces), phi0, phi_inf, require_concave);
}

OrliczFn orlicz_from_json(const json& j) {
    std::vector<Piece> pieces;
    for (const auto& e : expect(j, "pieces")) pieces.push_back(piece_from_json(e));
    XRat bF = xscalar_from_json(expect(j, "bF"), "bF");
    double at_bF = xscalar_from_json(expect(j, "valueAtbF"), "valueAtbF").to_double();
    bool vz = j.value("vanishesOnlyAtZero", true);
    return OrliczFn(std::move(pieces), bF, at_bF, vz);
}

SpaceSpec space_from_json(const json& j) {
    std::string kind = expect(j, "kind").get<std::string>();
    if (kind == "cesaro") return SpaceSpec::cesaro(space_from_json(expect(j, "base")));
    if (kind == "intersection")
        return SpaceSpec::intersection(space_from_json(expect(j, "left")),
                                       space_from_json(expect(j, "right")));
    if (kind == "calderon_lozanovskii")
        return SpaceSpec::calderon_lozanovskii(space_from_json(expect(j, "base")),
                                               orlicz_from_json(expect(j, "F")));
    Domain d = parse_domain(expect(j, "domain").get<std::string>());
    if (kind == "lp") return SpaceSpec::lp(d, scalar_from_json(expect(j, "p"), "p"));
    if (kind == "linf") return SpaceSpec::linf(d);
    if (kind == "lorentz") return SpaceSpec::lorentz(d, phi_from_json(expect(j, "phi"), true));
    if (kind == "marcinkiewicz")
        return SpaceSpec::marcinkiewicz(d, phi_from_json(expect(j, "phi")));
    if (kind == "sum_lp_linf")
        return SpaceSpec::sum_lp_linf(d, scalar_from_json(expect(j, "p"), "p"));
    parse_fail("kind", "unknown space kind '" + kind + "'");
}

json eval_result_to_json(const EvalResult& r) {
    json j;
    if (std::isinf(r.value))
        j["value"] = "inf";
    else
        j["value"] = r.value;
    j["method"] = r.exact ? "exact" : "numeric";
    j["errBound"] = r.err_bound;
    j["depth"] = r.depth;
    return j;
}

json dist_result_to_json(const DistResult& d) {
    json j;
    if (std::isinf(d.value))
        j["value"] = "inf";
    else
        j["value"] = d.value;
    j["errBound"] = d.err_bound;
    j["path"] = dist_path_name(d.path);
    j["schedule"] = json::array();
    for (auto& [n, s] : d.partials) j["schedule"].push_back({{"n", n}, {"s", s}});
    return j;
}

json check_report_to_json(const CheckReport& r) {
    json j;
    j["id"] = r.id;
    j["overall"] = r.overall;
    j["verdict"] = r.verdict;
    j["clauses"] = json::array();
    for (const auto& c : r.clauses) {
        json cj;
        cj["description"] = c.description;
        cj["computed"] = eval_result_to_json(c.computed);
        cj["target"] = c.target;
        cj["tol"] = c.tol;
        cj["pass"] = c.pass;
        j["clauses"].push_back(cj);
    }
    j["flags"] = r.flags;
    return j;
}

std::string check_report_to_table(const CheckReport& r) {
    std::ostringstream os;
    os << "check " << r.id << ": " << (r.overall ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.clauses) {
        os << "  [" << (c.pass ? "ok" : "XX") << "] " << c.description << "  computed=";
        if (std::isinf(c.computed.value))
            os << "inf";
        else
            os << std::setprecision(12) << c.computed.value;
        os << " target=" << c.target << " tol=" << c.tol;
        if (c.computed.err_bound > 0) os << " err=" << c.computed.err_bound;
        os << "\n";
    }
    for (const auto& f : r.flags) os << "  note: " << f << "\n";
    os << "  verdict: " << r.verdict << "\n";
    return os.str();
}

} // namespace rispaces
