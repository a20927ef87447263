#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gwc/correspondence.hpp"
#include "gwc/relative_fiber.hpp"
#include "gwc/selftest.hpp"

using namespace gwc;
using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& out) {
    std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out);
    f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

void require_point_cut(const std::string& space, const std::string& center) {
    if (space != "P2") throw Error("unsupported geometry: matrix space " + space);
    if (SubmanifoldDescriptor::parse(center).dim != 0) throw Error("unsupported geometry: center " + center);
}

json witness_json(const UniruledWitness& w) {
    json j;
    j["space"] = w.space;
    j["found"] = w.found;
    if (w.found) {
        const Target& t = Target::parse(w.space).kind() == TargetKind::BlP2 ? engine_for(TargetKind::BlP2).target()
                                                                            : engine_for(TargetKind::P2).target();
        j["query"] = query_string(t, w.query);
        j["class"] = t.class_string(w.query.A);
        j["value"] = w.value;
    }
    j["trail"] = w.trail;
    return j;
}

json transfer_json(const TransferResult& r) {
    return {{"ok", r.ok},
            {"source", witness_json(r.source)},
            {"target", witness_json(r.target)},
            {"relative_key", r.relative_key},
            {"relative_value", r.relative_value},
            {"trail", r.trail}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genus-zero Gromov-Witten invariants and the relative/absolute correspondence of a point blow-up"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned long seed = kDefaultSeed;
    bool verbose_flag = false;
    std::string out;
    app.add_option("--seed", seed, "seed for randomized weights and vectors")->capture_default_str();
    app.add_flag("-v,--verbose", verbose_flag, "diagnostics on stderr");
    app.add_option("-o,--out", out, "write JSON to a file instead of stdout");

    std::string space = "P2", cls, insertions, center = "point", filter = "genus0-pt";
    bool reduce = false;
    auto* inv = app.add_subcommand("invariant", "evaluate a genus-zero invariant");
    inv->add_option("--space", space)->capture_default_str();
    inv->add_option("--class", cls)->required();
    inv->add_option("--insertions", insertions, "comma list such as pt,tau1(H),H");
    inv->add_flag("--reduce", reduce, "also run the reduction to a primary witness");

    int n = 0, d = 0, j = 0;
    std::string lambda;
    auto* rpn = app.add_subcommand("relative-pn", "fiber-class relative invariant of (P^n, P^{n-1})");
    rpn->add_option("--n", n)->required();
    rpn->add_option("--d", d)->required();
    rpn->add_option("--j", j)->capture_default_str();
    rpn->add_option("--lambda", lambda, "comma list of n+1 distinct rational weights");

    std::string bound = "3";
    auto* mat = app.add_subcommand("matrix", "build the truncated correspondence matrix");
    mat->add_option("--space", space)->capture_default_str();
    mat->add_option("--center", center)->capture_default_str();
    mat->add_option("--bound", bound)->capture_default_str();
    mat->add_option("--filter", filter)->capture_default_str();

    std::string matrix_path, vector_path, direction = "abs2rel";
    auto* sol = app.add_subcommand("solve", "apply the matrix or its inverse to an invariant vector");
    sol->add_option("--matrix", matrix_path, "matrix JSON; built from --bound when absent");
    sol->add_option("--vector", vector_path, "vector JSON; the absolute vector of P2 when absent");
    sol->add_option("--direction", direction, "abs2rel or rel2abs")->capture_default_str();
    sol->add_option("--bound", bound)->capture_default_str();
    sol->add_option("--filter", filter)->capture_default_str();

    long degree = 1;
    std::string sides, row;
    auto* deg = app.add_subcommand("degenerate", "degeneration formula along a symplectic cut");
    deg->add_option("--space", space, "P1 (cut at a point) or P2 (cut along the point sphere bundle)")
        ->capture_default_str();
    deg->add_option("--degree", degree)->capture_default_str();
    deg->add_option("--insertions", insertions);
    deg->add_option("--sides", sides, "comma list of 0/1, one per insertion");
    deg->add_option("--row", row, "relative graph key of the P2 row");
    deg->add_option("--vector", vector_path, "relative oracle table; solved from P2 when absent");
    deg->add_option("--bound", bound)->capture_default_str();

    long ubound = 3;
    bool transfer = false;
    auto* uni = app.add_subcommand("uniruled", "search for a nonzero point-insertion invariant");
    uni->add_option("--space", space)->capture_default_str();
    uni->add_option("--bound", ubound)->capture_default_str();
    uni->add_flag("--transfer", transfer, "also carry the witness through the correspondence");

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    set_verbose(verbose_flag);

    try {
        if (*inv) {
            GwEngine& e = engine_for(Target::parse(space).kind());
            const Target& t = e.target();
            Query q{t.parse_class(cls), parse_insertions(t, insertions)};
            long vdim = t.c1(q.A) + t.dim() - 3 + static_cast<long>(q.ins.size());
            long cons = 0;
            for (const auto& x : q.ins) cons += x.d + t.cdeg(x.cls);
            json r{{"query", query_string(t, q)},
                   {"space", t.name()},
                   {"class", t.class_string(q.A)},
                   {"value", e.evaluate(q)},
                   {"dimension-check", {{"virtual_dimension", vdim}, {"constraint_degree", cons}, {"ok", vdim == cons}}}};
            if (reduce) {
                Reduction red = e.reduce_to_primary(q);
                json steps = json::array();
                for (const auto& s : red.steps)
                    steps.push_back({{"rule", s.rule}, {"from", query_string(t, s.from)}, {"to", query_string(t, s.to)}});
                json expansion = json::array();
                for (const auto& pt : red.primary_expansion) {
                    json f = json::array();
                    for (const auto& q2 : pt.factors) f.push_back(query_string(t, q2));
                    expansion.push_back({{"coefficient", pt.coeff}, {"factors", f}});
                }
                r["reduction"] = {{"steps", steps}, {"has_witness", red.has_witness}, {"primary_expansion", expansion}};
                if (red.has_witness) r["reduction"]["witness"] = query_string(t, red.witness);
            }
            emit(r, out);
        } else if (*rpn) {
            FiberQuery q{n, d, j};
            q.validate();
            WeightVector w;
            if (lambda.empty())
                w = random_weights(n + 1, seed);
            else
                for (const auto& s : split(lambda, ',')) w.push_back(Rational::parse(s));
            Rational c = closed_form(q), l = localization_sum(q, w);
            json lj = json::array();
            for (const auto& x : w) lj.push_back(x);
            emit({{"n", n}, {"d", d}, {"j", j}, {"closed_form", c}, {"localization", l}, {"equal", c == l},
                  {"lambda", lj}, {"seed", seed}},
                 out);
        } else if (*mat) {
            require_point_cut(space, center);
            CorrespondenceEngine eng;
            auto m = eng.build_matrix(Rational::parse(bound), parse_filter(filter));
            emit(m.to_json(), out);
        } else if (*sol) {
            CorrespondenceEngine eng;
            CorrespondenceMatrix m = matrix_path.empty()
                                         ? eng.build_matrix(Rational::parse(bound), parse_filter(filter))
                                         : CorrespondenceMatrix::from_json(read_json(matrix_path));
            SolveDirection dir = parse_direction(direction);
            TaggedVector v;
            if (!vector_path.empty())
                v = vector_from_json(read_json(vector_path));
            else if (dir == SolveDirection::AbsToRel && !m.graphs.empty())
                v = eng.absolute_vector(m);
            else
                throw Error("--vector is required here");
            TaggedVector r;
            r.tag = tag_for(m.filter);
            r.bound = m.bound;
            r.entries = solve_lower(m, v.entries, dir);
            json jr = vector_to_json(r);
            jr["direction"] = dir == SolveDirection::AbsToRel ? "abs2rel" : "rel2abs";
            emit(jr, out);
        } else if (*deg) {
            if (space == "P1") {
                const Target& t = engine_for(TargetKind::P1).target();
                auto ins = parse_insertions(t, insertions);
                std::vector<int> sd;
                for (const auto& s : split(sides, ',')) sd.push_back(std::stoi(s));
                if (sd.empty())
                    for (size_t i = 0; i < ins.size(); ++i) sd.push_back(static_cast<int>(i % 2));
                auto r = degeneration_sum_p1(degree, ins, sd);
                json terms = json::array();
                for (const auto& tm : r.terms) {
                    json eta = json::array();
                    for (const auto& p : tm.eta) eta.push_back(p.m);
                    terms.push_back({{"minus", tm.minus}, {"plus", tm.plus}, {"eta", eta}, {"delta", tm.delta.get_str()},
                                     {"weight", tm.coefficient}, {"contribution", tm.contribution}});
                }
                emit({{"query", query_string(t, Query{t.make_class({degree}), ins})},
                      {"value", r.value},
                      {"absolute", engine_for(TargetKind::P1).evaluate(t.make_class({degree}), ins)},
                      {"terms", terms}},
                     out);
            } else if (space == "P2") {
                if (row.empty()) throw Error("--row is required for the P2 cut");
                CorrespondenceEngine eng;
                auto m = eng.build_matrix(Rational::parse(bound), GraphFilter::Genus0Pt);
                auto idx = m.index(row);
                if (!idx) throw Error("row outside the index set: " + row);
                InvariantVector oracle = vector_path.empty()
                                             ? solve_lower(m, eng.absolute_vector(m).entries, SolveDirection::AbsToRel)
                                             : vector_from_json(read_json(vector_path)).entries;
                auto r = eng.degeneration_sum(m.graphs[*idx], oracle);
                json terms = json::array();
                for (const auto& tm : r.terms)
                    terms.push_back({{"relative", tm.minus.front()}, {"coefficient", tm.coefficient},
                                     {"contribution", tm.contribution}});
                emit({{"row", row},
                      {"absolute_query", eng.graphs().absolute_key(m.graphs[*idx])},
                      {"value", r.value},
                      {"absolute", eng.absolute_value(m.graphs[*idx])},
                      {"terms", terms}},
                     out);
            } else {
                throw Error("unsupported geometry: " + space);
            }
        } else if (*uni) {
            TargetKind k = Target::parse(space).kind();
            if (k != TargetKind::P1 && k != TargetKind::P2 && k != TargetKind::BlP2)
                throw Error("unsupported space: " + space);
            json r = witness_json(uniruled_search(k, ubound));
            r["bound"] = ubound;
            if (transfer && k != TargetKind::P1 && ubound > 0) {
                CorrespondenceEngine eng;
                auto m = eng.build_matrix(Rational(std::min<long>(ubound, 3)), GraphFilter::Genus0Pt);
                r["transfer"] = transfer_json(k == TargetKind::P2 ? transfer_p2_to_blowup(eng, m)
                                                                  : transfer_blowup_to_p2(eng, m));
            }
            emit(r, out);
        } else if (*self) {
            bool all = true;
            for (const auto& res : run_acceptance(seed)) {
                std::cout << format_result(res) << "\n";
                all &= res.pass;
            }
            return all ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
