#include "tropcurves/json_util.hpp"

#include <nlohmann/json.hpp>

#include "tropcurves/errors.hpp"

namespace tropcurves {

using nlohmann::json;

namespace {

Int int_from_json(const json& j) {
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw InvalidInput("cannot parse integer: '" + j.get<std::string>() + "'");
        }
    }
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    throw InvalidInput("expected integer or decimal string, got: " + j.dump());
}

}  // namespace

json rat_to_json(const Rat& q) {
    return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

Rat rat_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw InvalidInput("rational pair must have 2 entries: " + j.dump());
        Int num = int_from_json(j[0]);
        Int den = int_from_json(j[1]);
        if (den == 0) throw ZeroDivisor("rational with zero denominator: " + j.dump());
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            Int num = int_from_json(json(s.substr(0, slash)));
            Int den = int_from_json(json(s.substr(slash + 1)));
            if (den == 0) throw ZeroDivisor("rational with zero denominator: " + s);
            Rat q(num, den);
            q.canonicalize();
            return q;
        }
        return Rat(int_from_json(j));
    }
    if (j.is_number_integer()) return Rat(int_from_json(j));
    throw InvalidInput("expected rational ([num, den], \"a/b\", or integer), got: " + j.dump());
}

json val_to_json(const Val& v) {
    if (v.is_inf) return json("inf");
    return rat_to_json(v.v);
}

Val val_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Val::inf();
    return Val::of(rat_from_json(j));
}

json qvec_to_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_to_json(x));
    return a;
}

QVec qvec_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("expected array of rationals, got: " + j.dump());
    QVec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

json ivec_to_json(const IVec& v) {
    json a = json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

IVec ivec_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("expected array of integers, got: " + j.dump());
    IVec v;
    v.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw InvalidInput("expected integer entry, got: " + x.dump());
        v.push_back(x.get<std::int64_t>());
    }
    return v;
}

json series_to_json(const PuiseuxSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms)
        terms.push_back(json{{"e", rat_to_json(e)}, {"c", rat_to_json(c)}});
    if (!s.prec) return terms;
    return json{{"terms", std::move(terms)}, {"prec", rat_to_json(*s.prec)}};
}

PuiseuxSeries series_from_json(const json& j) {
    PuiseuxSeries s;
    const json* terms = nullptr;
    if (j.is_array()) {
        terms = &j;
    } else if (j.is_object()) {
        terms = &json_require(j, "terms");
        if (!terms->is_array()) throw InvalidInput("series 'terms' must be an array");
        if (j.contains("prec")) s.prec = rat_from_json(j.at("prec"));
    } else {
        throw InvalidInput("series must be an array of terms or {terms, prec}: " + j.dump());
    }
    std::optional<Rat> prev;
    for (const auto& t : *terms) {
        if (!t.is_object()) throw InvalidInput("series term must be an object: " + t.dump());
        Rat e = rat_from_json(json_require(t, "e"));
        Rat c = rat_from_json(json_require(t, "c"));
        if (prev && !(*prev < e))
            throw InvalidInput("series exponents must be strictly increasing");
        prev = e;
        if (c == 0) throw InvalidInput("series term with zero coefficient");
        if (s.prec && e >= *s.prec)
            throw InvalidInput("series term at exponent >= precision bound");
        s.terms.emplace(std::move(e), std::move(c));
    }
    return s;
}

const json& json_require(const json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw InvalidInput("missing required field '" + key + "'");
    return *it;
}

}  // namespace tropcurves
