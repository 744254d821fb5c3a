#include "cde/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "cde/codegen.hpp"
#include "cde/errors.hpp"
#include "cde/json_io.hpp"
#include "cde/oracle.hpp"
#include "cde/solver.hpp"

namespace cde::cli {

namespace {

using json_io::json;

struct Options {
    std::string verb;
    std::string input;
    std::string output;
    std::string code_path;
    std::optional<unsigned> field_m;
    std::optional<std::uint32_t> poly;
    bool normalize = false;
    bool emit_code = false;
    bool check = false;
    std::uint64_t seed = 1;
};

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::ConstructionFailed:
        case Errc::SingularSystem:
        case Errc::DegenerateKernel:
        case Errc::Singular:
        case Errc::ZeroInverse:
            return 2;
        default:
            return 1;
    }
}

std::optional<FieldSpec> requested_field(const Options& o) {
    if (!o.field_m && !o.poly) return std::nullopt;
    const unsigned m = o.field_m.value_or(4);
    return FieldSpec{m, o.poly.value_or(m >= 1 && m <= 16 ? default_primitive_poly(m) : 0)};
}

// Random packets encoded and then decoded from each node's own packets.
bool round_trip(const CodeMatrix& code, const Instance& inst, std::uint64_t seed, json& failures) {
    const Field f(code.field);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.size() - 1);
    std::vector<Element> packets(inst.k);
    for (auto& p : packets) p = static_cast<Element>(pick(rng));
    const auto sent = encode(code, packets);
    bool ok = true;
    for (std::size_t i = 0; i < inst.n; ++i) {
        if (inst.rows[i].weight() < code.d) continue;
        std::vector<std::pair<std::size_t, Element>> known;
        for (auto p : inst.rows[i].positions()) known.emplace_back(p, packets[p]);
        std::string reason;
        try {
            if (decode(code, known, sent) != packets) reason = "decoded packets differ";
        } catch (const Error& e) {
            reason = e.what();
        }
        if (!reason.empty()) {
            ok = false;
            failures.push_back(json{{"node", i + 1}, {"reason", "round trip: " + reason}});
        }
    }
    return ok;
}

json check_code(const CodeMatrix& code, const Instance& inst, std::uint64_t seed) {
    const auto invariants = verify_code(code);
    const auto universal = verify_universal_recovery(code, inst);
    json j = json_io::report_to_json(universal);
    auto& failures = j["failures"];
    if (!code.rounds.empty()) {
        for (const auto& f : verify_local_recovery(code, inst).failures)
            failures.push_back(json{{"node", f.node + 1}, {"reason", f.reason}});
    }
    const bool trip = universal.ok() && round_trip(code, inst, seed, failures);
    j["code_invariants"] = invariants ? json(*invariants) : json(nullptr);
    j["roundtrip"] = trip;
    j["ok"] = failures.empty() && !invariants && trip;
    return j;
}

CodeMatrix code_for(const SolveResult& res, const Instance& original, std::optional<FieldSpec> field) {
    CodeMatrix code;
    if (res.basis.size() > 0) {
        code = build_code(res.basis, field);
    } else {
        code.field = field.value_or(default_field_for(std::max<std::size_t>(original.k, 1)));
        code.matrix = FieldMatrix(0, res.normalized.k);
        code.support.d = code.d = res.d_star;
    }
    if (res.normalization.empty()) return code;
    return embed_code(code, res.normalization, original.k);
}

CodeMatrix code_for(const SloResult& res, std::optional<FieldSpec> field) {
    std::vector<CodeRound> rounds;
    for (const auto& rd : res.rounds) rounds.push_back(CodeRound{rd.R_star, rd.d_star, rd.columns, rd.nodes});
    return build_nested_code(res.rounds.back().basis, std::move(rounds), field);
}

int finish(const json& result, const Options& o, std::ostream& out, int status) {
    const auto text = result.dump(2);
    if (o.output.empty()) {
        out << text << '\n';
    } else {
        std::ofstream file(o.output);
        if (!file) raise(Errc::Parse, "cannot write " + o.output);
        file << text << '\n';
    }
    return status;
}

int check_status(const json& j) { return j.contains("check") && !j["check"]["ok"].get<bool>() ? 1 : 0; }

int cmd_solve(const Options& o, std::ostream& out) {
    const auto inst = json_io::read_instance(o.input);
    const auto res = solve(inst);
    json j = json_io::solve_to_json(res, inst.k);
    if (o.emit_code || o.check) {
        const auto code = code_for(res, inst, requested_field(o));
        if (o.emit_code) j["code"] = json_io::code_to_json(code);
        if (o.check) j["check"] = check_code(code, inst, o.seed);
    }
    return finish(j, o, out, check_status(j));
}

int cmd_solve_weighted(const Options& o, std::ostream& out) {
    const auto inst = json_io::read_instance(o.input);
    if (!o.normalize) return finish(json_io::weighted_to_json(solve_weighted(inst)), o, out, 0);

    auto [norm, report] = normalize(inst);
    auto res = solve_weighted(norm);
    BasisSet wide{res.basis.d, {}, res.basis.provenance};
    for (const auto& v : res.basis.vectors) {
        BitVector w(inst.k);
        for (auto p : v.positions()) w.set(report.column_map[p]);
        wide.vectors.push_back(std::move(w));
    }
    res.basis = std::move(wide);
    json forced = json::array();
    for (const auto& f : report.singleton_forced) {
        ++res.rate[f.node];
        ++res.R;
        res.cost += (*inst.weights)[f.node];
        forced.push_back(json{{"node", f.node + 1}, {"packet", f.packet + 1}});
    }
    json j = json_io::weighted_to_json(res);
    j["forced"] = forced;
    return finish(j, o, out, 0);
}

int cmd_slo(const Options& o, std::ostream& out) {
    if (o.normalize) raise(Errc::InvalidInstance, "--normalize is not supported for slo");
    const auto inst = json_io::read_instance(o.input);
    const auto res = solve_slo(inst);
    json j = json_io::slo_to_json(res);
    if (o.emit_code || o.check) {
        const auto code = code_for(res, requested_field(o));
        if (o.emit_code) j["code"] = json_io::code_to_json(code);
        if (o.check) j["check"] = check_code(code, inst, o.seed);
    }
    return finish(j, o, out, check_status(j));
}

int cmd_codegen(const Options& o, std::ostream& out, std::ostream& err) {
    const auto in = json_io::read_json(o.input);
    CodeMatrix code;
    std::optional<Instance> inst;
    if (in.contains("vectors")) {
        BasisSet basis;
        basis.d = in.at("d").get<std::size_t>();
        for (const auto& row : in.at("vectors")) basis.vectors.push_back(json_io::bits_from_json(row));
        basis.provenance.assign(basis.size(), 0);
        code = build_code(basis, requested_field(o));
    } else {
        inst = json_io::instance_from_json(in);
        code = code_for(solve(*inst), *inst, requested_field(o));
    }
    int status = 0;
    if (o.check) {
        const auto problem = verify_code(code);
        if (problem) {
            err << "code check failed: " << *problem << '\n';
            status = 1;
        }
        if (inst) {
            const auto report = check_code(code, *inst, o.seed);
            if (!report["ok"].get<bool>()) {
                err << "recovery check failed: " << report.dump() << '\n';
                status = 1;
            }
        }
    }
    return finish(json_io::code_to_json(code), o, out, status);
}

int cmd_verify(const Options& o, std::ostream& out) {
    if (o.code_path.empty()) raise(Errc::Parse, "verify needs --code <file>");
    const auto inst = json_io::read_instance(o.input);
    const auto in = json_io::read_json(o.code_path);
    const auto code = json_io::code_from_json(in.contains("code") ? in.at("code") : in);
    const auto j = check_code(code, inst, o.seed);
    return finish(j, o, out, j["ok"].get<bool>() ? 0 : 1);
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const auto inst = json_io::read_instance(o.input);
    require_valid(inst);
    const auto sum = oracle::min_sum_rate(inst);
    if (!inst.weights) return finish(json_io::oracle_to_json(sum, nullptr), o, out, 0);
    const auto weighted = oracle::min_weighted_cost(inst);
    return finish(json_io::oracle_to_json(sum, &weighted), o, out, 0);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cooperative data exchange: minimum transmissions and coding schemes", "cde"};
    app.add_option("verb", o.verb, "solve | solve-weighted | slo | codegen | verify | oracle")
        ->required()
        ->check(CLI::IsMember({"solve", "solve-weighted", "slo", "codegen", "verify", "oracle"}));
    app.add_option("input", o.input, "instance JSON (a basis JSON for codegen also works)")->required();
    app.add_option("-o,--output", o.output, "write the JSON result here instead of stdout");
    app.add_option("--code", o.code_path, "code JSON for verify");
    app.add_option("--field-m", o.field_m, "field degree m of GF(2^m)")->check(CLI::Range(1, 16));
    app.add_option("--poly", o.poly, "field polynomial as an integer");
    app.add_flag("--normalize", o.normalize, "drop universal packets, send single-holder packets uncoded");
    app.add_flag("--emit-code", o.emit_code, "attach the coefficient matrix");
    app.add_option("--seed", o.seed, "seed for the round-trip check");
    app.add_flag("--check", o.check, "verify recovery with the emitted code");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 1;
    }

    try {
        if (o.verb == "solve") return cmd_solve(o, out);
        if (o.verb == "solve-weighted") return cmd_solve_weighted(o, out);
        if (o.verb == "slo") return cmd_slo(o, out);
        if (o.verb == "codegen") return cmd_codegen(o, out, err);
        if (o.verb == "verify") return cmd_verify(o, out);
        return cmd_oracle(o, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const json_io::json::exception& e) {
        err << "Parse: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cde::cli
