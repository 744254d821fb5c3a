#include "cde/json_io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "cde/errors.hpp"

namespace cde::json_io {

namespace {

std::size_t to_count(const json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) raise(Errc::Parse, what + " must be a non-negative integer");
    return j.get<std::size_t>();
}

std::size_t to_index(const json& j, const std::string& what) {
    const auto v = to_count(j, what);
    if (v == 0) raise(Errc::Parse, what + " is 1-based");
    return v - 1;
}

const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) raise(Errc::Parse, std::string("missing \"") + key + "\"");
    return j.at(key);
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        raise(Errc::Parse, what + ": cannot read \"" + s + "\"");
    }
    if (used != s.size()) raise(Errc::Parse, what + ": cannot read \"" + s + "\"");
    return v;
}

// Exact value of a decimal literal such as "2.5" or "1e-3".
Weight parse_decimal(const std::string& text) {
    std::string digits;
    int exponent = 0;
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    bool seen_point = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        if (text[i] == '.') {
            if (seen_point) raise(Errc::Parse, "weight \"" + text + "\" is not a number");
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i];
            if (seen_point) --exponent;
        } else {
            raise(Errc::Parse, "weight \"" + text + "\" is not a number");
        }
    }
    if (i < text.size()) exponent += static_cast<int>(parse_int(text.substr(i + 1), "weight exponent"));
    if (digits.empty()) raise(Errc::Parse, "weight \"" + text + "\" is not a number");
    while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
    if (digits.size() > 18 || exponent > 18 || exponent < -18) raise(Errc::Parse, "weight \"" + text + "\" out of range");
    std::int64_t num = parse_int(digits, "weight");
    std::int64_t den = 1;
    for (; exponent > 0; --exponent) {
        if (num > std::numeric_limits<std::int64_t>::max() / 10) raise(Errc::Parse, "weight out of range");
        num *= 10;
    }
    for (; exponent < 0; ++exponent) den *= 10;
    return Weight(negative ? -num : num, den);
}

json index_list(const std::vector<std::size_t>& xs) {
    json out = json::array();
    for (auto x : xs) out.push_back(x + 1);
    return out;
}

std::vector<std::size_t> index_list_from(const json& j, const std::string& what) {
    if (!j.is_array()) raise(Errc::Parse, what + " must be an array");
    std::vector<std::size_t> out;
    for (const auto& x : j) out.push_back(to_index(x, what));
    return out;
}

json basis_rows_in(const BasisSet& b, const std::vector<std::size_t>& column_map, std::size_t k) {
    json rows = json::array();
    for (const auto& v : b.vectors) {
        BitVector wide(k);
        for (auto p : v.positions()) wide.set(column_map[p]);
        rows.push_back(bits_to_json(wide));
    }
    return rows;
}

}  // namespace

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::Parse, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        raise(Errc::Parse, path + ": " + e.what());
    }
}

Instance read_instance(const std::string& path) { return instance_from_json(read_json(path)); }

Weight weight_from_json(const json& j) {
    if (j.is_number_integer()) return Weight(j.get<std::int64_t>());
    if (j.is_number_float()) return parse_decimal(j.dump());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash == std::string::npos) return parse_decimal(s);
        const auto den = parse_int(s.substr(slash + 1), "weight denominator");
        if (den == 0) raise(Errc::Parse, "weight \"" + s + "\" has a zero denominator");
        return Weight(parse_int(s.substr(0, slash), "weight numerator"), den);
    }
    raise(Errc::Parse, "weight must be a number or \"p/q\" string");
}

json weight_to_json(const Weight& w) {
    if (w.denominator() == 1) return w.numerator();
    return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

Instance instance_from_json(const json& j) {
    if (!j.is_object()) raise(Errc::Parse, "instance must be a JSON object");
    const auto& m = member(j, "matrix");
    if (!m.is_array()) raise(Errc::Parse, "\"matrix\" must be an array of rows");
    Instance inst;
    inst.n = j.contains("N") ? to_count(j.at("N"), "N") : m.size();
    inst.k = j.contains("K") ? to_count(j.at("K"), "K") : (m.empty() ? 0 : m.front().size());
    for (const auto& row : m) inst.rows.push_back(bits_from_json(row));
    if (j.contains("weights") && !j.at("weights").is_null()) {
        const auto& w = j.at("weights");
        if (!w.is_array()) raise(Errc::Parse, "\"weights\" must be an array");
        std::vector<Weight> ws;
        for (const auto& x : w) ws.push_back(weight_from_json(x));
        inst.weights = std::move(ws);
    }
    if (j.contains("groups") && !j.at("groups").is_null()) {
        const auto& g = j.at("groups");
        if (!g.is_array()) raise(Errc::Parse, "\"groups\" must be an array of node lists");
        NodeGroups groups;
        for (const auto& grp : g) groups.push_back(index_list_from(grp, "group member"));
        inst.groups = std::move(groups);
    }
    return inst;
}

json instance_to_json(const Instance& inst) {
    json j{{"N", inst.n}, {"K", inst.k}, {"matrix", json::array()}};
    for (const auto& r : inst.rows) j["matrix"].push_back(bits_to_json(r));
    if (inst.weights) {
        j["weights"] = json::array();
        for (const auto& w : *inst.weights) j["weights"].push_back(weight_to_json(w));
    }
    if (inst.groups) {
        j["groups"] = json::array();
        for (const auto& g : *inst.groups) j["groups"].push_back(index_list(g));
    }
    return j;
}

std::string element_to_hex(Element e) {
    std::ostringstream os;
    os << std::hex << e;
    return os.str();
}

Element element_from_hex(const std::string& s) {
    std::string body = s;
    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) body = body.substr(2);
    if (body.empty() || body.size() > 4) raise(Errc::Parse, "field element \"" + s + "\" is not 1-4 hex digits");
    for (char c : body)
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            raise(Errc::Parse, "field element \"" + s + "\" is not hex");
    return static_cast<Element>(std::stoul(body, nullptr, 16));
}

json field_to_json(const FieldSpec& f) { return json{{"m", f.m}, {"poly", f.poly}}; }

FieldSpec field_from_json(const json& j) {
    FieldSpec f;
    f.m = static_cast<unsigned>(to_count(member(j, "m"), "field m"));
    const auto& p = member(j, "poly");
    if (p.is_string()) {
        const auto s = p.get<std::string>();
        try {
            f.poly = static_cast<std::uint32_t>(std::stoul(s, nullptr, 0));
        } catch (const std::exception&) {
            raise(Errc::Parse, "field poly \"" + s + "\" is not a number");
        }
    } else {
        f.poly = static_cast<std::uint32_t>(to_count(p, "field poly"));
    }
    return f;
}

json rate_to_json(const RateVector& r) { return json(r.rates); }

json bits_to_json(const BitVector& v) {
    json row = json::array();
    for (auto b : v.to_bits()) row.push_back(b);
    return row;
}

BitVector bits_from_json(const json& j) {
    if (!j.is_array()) raise(Errc::Parse, "binary row must be an array");
    std::vector<int> bits;
    for (const auto& b : j) {
        if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
            raise(Errc::Parse, "binary row entries must be 0 or 1");
        bits.push_back(b.get<int>());
    }
    return BitVector::from_bits(bits);
}

json basis_to_json(const BasisSet& b) {
    json vectors = json::array();
    for (const auto& v : b.vectors) vectors.push_back(bits_to_json(v));
    return json{{"d", b.d}, {"vectors", vectors}, {"provenance", index_list(b.provenance)}};
}

json code_to_json(const CodeMatrix& code) {
    json matrix = json::array();
    for (std::size_t r = 0; r < code.matrix.rows(); ++r) {
        json row = json::array();
        for (auto e : code.matrix.row(r)) row.push_back(element_to_hex(e));
        matrix.push_back(row);
    }
    json support = json::array();
    for (const auto& v : code.support.vectors) support.push_back(bits_to_json(v));
    json j{{"field", field_to_json(code.field)},
           {"matrix", matrix},
           {"support", support},
           {"d", code.d},
           {"provenance", index_list(code.support.provenance)}};
    if (!code.rounds.empty()) {
        json rounds = json::array();
        for (const auto& rd : code.rounds)
            rounds.push_back(json{{"rows", rd.rows},
                                  {"d", rd.d},
                                  {"packets", index_list(rd.columns.positions())},
                                  {"nodes", index_list(rd.nodes)}});
        j["rounds"] = rounds;
    }
    return j;
}

CodeMatrix code_from_json(const json& j) {
    if (!j.is_object()) raise(Errc::Parse, "code must be a JSON object");
    CodeMatrix code;
    code.field = field_from_json(member(j, "field"));
    code.d = to_count(member(j, "d"), "d");
    const auto& m = member(j, "matrix");
    const auto& s = member(j, "support");
    if (!m.is_array() || !s.is_array()) raise(Errc::Parse, "\"matrix\" and \"support\" must be arrays");
    if (m.size() != s.size()) raise(Errc::Parse, "\"matrix\" and \"support\" row counts differ");
    const std::size_t rows = m.size();
    std::size_t cols = 0;
    if (rows > 0) {
        if (!m.front().is_array()) raise(Errc::Parse, "matrix rows must be arrays");
        cols = m.front().size();
    } else if (j.contains("K")) {
        cols = to_count(j.at("K"), "K");
    }
    std::vector<Element> entries;
    for (const auto& row : m) {
        if (!row.is_array() || row.size() != cols) raise(Errc::Parse, "matrix rows must all have the same length");
        for (const auto& e : row) {
            if (!e.is_string()) raise(Errc::Parse, "matrix entries must be hex strings");
            entries.push_back(element_from_hex(e.get<std::string>()));
        }
    }
    code.matrix = FieldMatrix(rows, cols, std::move(entries));
    code.support.d = code.d;
    for (const auto& row : s) {
        auto v = bits_from_json(row);
        if (v.width() != cols) raise(Errc::Parse, "support rows must match the matrix width");
        code.support.vectors.push_back(std::move(v));
    }
    if (j.contains("provenance")) {
        code.support.provenance = index_list_from(j.at("provenance"), "provenance");
        if (code.support.provenance.size() != rows) raise(Errc::Parse, "\"provenance\" length differs from rows");
    } else {
        code.support.provenance.assign(rows, 0);
    }
    if (j.contains("rounds")) {
        for (const auto& rd : j.at("rounds")) {
            CodeRound r;
            r.rows = to_count(member(rd, "rows"), "round rows");
            r.d = to_count(member(rd, "d"), "round d");
            r.columns = BitVector(cols);
            for (auto p : index_list_from(member(rd, "packets"), "round packet")) {
                if (p >= cols) raise(Errc::Parse, "round packet out of range");
                r.columns.set(p);
            }
            if (rd.contains("nodes")) r.nodes = index_list_from(rd.at("nodes"), "round node");
            code.rounds.push_back(std::move(r));
        }
    }
    return code;
}

json report_to_json(const RecoveryReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back(json{{"node", f.node + 1}, {"reason", f.reason}});
    return json{{"ok", r.ok()}, {"failures", failures}};
}

json solve_to_json(const SolveResult& res, std::size_t original_k) {
    json forced = json::array();
    for (const auto& f : res.normalization.singleton_forced)
        forced.push_back(json{{"node", f.node + 1}, {"packet", f.packet + 1}});
    return json{{"R_star", res.R_star},
                {"d_star", res.d_star},
                {"rate", rate_to_json(res.rate)},
                {"basis", basis_rows_in(res.basis, res.normalization.column_map, original_k)},
                {"provenance", index_list(res.basis.provenance)},
                {"forced", forced},
                {"removed_universal", index_list(res.normalization.removed_universal)}};
}

json weighted_to_json(const WeightedResult& res) {
    json basis = json::array();
    for (const auto& v : res.basis.vectors) basis.push_back(bits_to_json(v));
    return json{{"cost", weight_to_json(res.cost)},
                {"rate", rate_to_json(res.rate)},
                {"R", res.R},
                {"d", res.basis.d},
                {"basis", basis},
                {"provenance", index_list(res.basis.provenance)}};
}

json slo_to_json(const SloResult& res) {
    json rounds = json::array();
    for (std::size_t i = 0; i < res.rounds.size(); ++i) {
        const auto& rd = res.rounds[i];
        rounds.push_back(json{{"round", i + 1},
                              {"R", rd.R_star},
                              {"K_i", rd.K_i},
                              {"M_i", rd.M_i},
                              {"d", rd.d_star},
                              {"nodes", index_list(rd.nodes)},
                              {"packets", index_list(rd.columns.positions())},
                              {"rate", rate_to_json(rd.rate)}});
    }
    json j{{"rounds", rounds}, {"totals", json::array()}};
    for (const auto& rd : res.rounds) j["totals"].push_back(rd.R_star);
    if (!res.rounds.empty()) j["basis"] = basis_to_json(res.rounds.back().basis);
    return j;
}

json oracle_to_json(const oracle::SumRateResult& sum, const oracle::WeightedResult* weighted) {
    json j{{"R_min", sum.r_min}, {"witness", rate_to_json(sum.witness)}};
    if (weighted) {
        j["cost"] = weight_to_json(weighted->cost);
        j["rate"] = rate_to_json(weighted->witness);
        j["R"] = weighted->r;
        json table = json::array();
        for (const auto& e : weighted->kappa)
            table.push_back(json{{"R", e.r}, {"cost", weight_to_json(e.cost)}, {"rate", rate_to_json(e.witness)}});
        j["kappa"] = table;
    }
    return j;
}

}  // namespace cde::json_io
