// bjlab: exact geometry of polyhedral norms, Birkhoff-James orthogonality,
// and orthogonality-preserving operators. All output is JSON on stdout.
//
// Exit codes: 0 success; 64 usage; 65 bad data; 70 internal invariant
// failure. The preserve subcommands additionally use 0 = preserved,
// 1 = violated, 2 = hypothesis error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bjlab/bjlab.hpp"

namespace {

using bjlab::Json;
using bjlab::Rat;
using bjlab::Vec;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

// "1,0;0,1" -> rows
std::vector<std::vector<Rat>> parse_rows(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';')) rows.push_back(bjlab::parse_rat_list(item));
    if (rows.empty()) throw bjlab::Error("no rows in list");
    return rows;
}

bjlab::PolyhedralSpace load_space(const std::string& ref) {
    if (const auto* s = bjlab::bundled_space_by_name(ref)) return *s;
    return bjlab::space_from_json(bjlab::load_json(ref));
}

bjlab::LinearOperator load_operator(const std::string& path) {
    return bjlab::operator_from_json(bjlab::load_json(path));
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << bjlab::dump_json(j);
    else
        bjlab::save_json(out_path, j);
}

// "ext" | "ksmooth:K" | "facet-interior" | "points:1,0;0,1" | "hyperplane:1,1[:count]"
bjlab::CandidateSet parse_candidate_set(const std::string& desc) {
    const auto colon = desc.find(':');
    const std::string kind = desc.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : desc.substr(colon + 1);
    if (kind == "ext") return bjlab::CandidateSet::ext();
    if (kind == "facet-interior") return bjlab::CandidateSet::facet_interior();
    if (kind == "ksmooth") {
        if (rest.empty()) throw bjlab::Error("ksmooth needs a k, e.g. ksmooth:2");
        return bjlab::CandidateSet::ksmooth(std::stoi(rest));
    }
    if (kind == "points") {
        std::vector<Vec> pts;
        for (auto& row : parse_rows(rest)) pts.push_back(Vec(std::move(row)));
        return bjlab::CandidateSet::explicit_points(std::move(pts));
    }
    if (kind == "hyperplane") {
        const auto colon2 = rest.rfind(':');
        std::size_t count = 0;
        std::string coords = rest;
        if (colon2 != std::string::npos && rest.find(',', colon2) == std::string::npos) {
            count = std::stoul(rest.substr(colon2 + 1));
            coords = rest.substr(0, colon2);
        }
        return bjlab::CandidateSet::hyperplane(bjlab::parse_rat_list(coords), count);
    }
    throw bjlab::Error("unknown candidate set kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Birkhoff-James orthogonality lab for polyhedral norms"};
    app.require_subcommand(1);
    int exit_code = 0;
    bool preserve_context = false;  // switches the exception-to-exit mapping

    // space new | info | dual
    auto* space_cmd = app.add_subcommand("space", "build and inspect spaces");
    space_cmd->require_subcommand(1);
    {
        auto* c = space_cmd->add_subcommand("new", "build a space from vertices or facets");
        auto vertices = std::make_shared<std::string>();
        auto facets = std::make_shared<std::string>();
        auto dim = std::make_shared<std::size_t>(0);
        auto out = std::make_shared<std::string>();
        c->add_option("--vertices", *vertices, "semicolon-separated vertex rows, e.g. \"1,1;1,-1\"");
        c->add_option("--facets", *facets, "semicolon-separated facet functional rows");
        c->add_option("--dim", *dim, "dimension (default: inferred from the first row)");
        c->add_option("--out", *out, "write the space JSON here instead of stdout");
        c->callback([=] {
            if (vertices->empty() == facets->empty())
                throw CLI::ValidationError("space new", "exactly one of --vertices/--facets");
            bjlab::PolyhedralSpace s = [&] {
                if (!vertices->empty()) {
                    const auto rows = parse_rows(*vertices);
                    std::vector<Vec> vs;
                    for (auto& r : rows) vs.push_back(Vec(r));
                    return bjlab::space_from_vertices(*dim ? *dim : rows[0].size(), vs);
                }
                const auto rows = parse_rows(*facets);
                std::vector<bjlab::Covec> fs;
                for (auto& r : rows) fs.push_back(bjlab::Covec(r));
                return bjlab::space_from_facets(*dim ? *dim : rows[0].size(), fs);
            }();
            emit(bjlab::space_to_json(s), *out);
        });
    }
    {
        auto* c = space_cmd->add_subcommand("info", "summarize a space");
        auto ref = std::make_shared<std::string>();
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->callback([=] {
            const auto s = load_space(*ref);
            Json j;
            j["dim"] = s.dim();
            j["num_vertices"] = s.vertices().size();
            j["num_facets"] = s.facets().size();
            j["num_faces"] = s.face_lattice().size();
            Json vs = Json::array();
            for (const auto& v : s.vertices()) vs.push_back(bjlab::rats_to_json(v.c));
            j["vertices"] = vs;
            Json fs = Json::array();
            for (const auto& f : s.facets()) fs.push_back(bjlab::rats_to_json(f.c));
            j["facets"] = fs;
            std::cout << bjlab::dump_json(j);
        });
    }
    {
        auto* c = space_cmd->add_subcommand("dual", "polar dual of a space");
        auto ref = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--out", *out, "write the dual space JSON here instead of stdout");
        c->callback([=] { emit(bjlab::space_to_json(bjlab::dual_space(load_space(*ref))), *out); });
    }

    // faces
    {
        auto* c = app.add_subcommand("faces", "face lattice grouped by dimension");
        auto ref = std::make_shared<std::string>();
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->callback([=] {
            const auto s = load_space(*ref);
            const auto& lattice = s.face_lattice();
            Json by_dim = Json::object();
            for (const auto& f : lattice) {
                const std::string key = std::to_string(f.dim);
                if (!by_dim.contains(key)) by_dim[key] = Json::array();
                by_dim[key].push_back(bjlab::face_to_json(s, f));
            }
            Json j;
            j["dim"] = s.dim();
            j["total"] = lattice.size();
            j["faces_by_dim"] = by_dim;
            std::cout << bjlab::dump_json(j);
        });
    }

    // smooth-order
    {
        auto* c = app.add_subcommand("smooth-order", "order of smoothness of a point");
        auto ref = std::make_shared<std::string>();
        auto point = std::make_shared<std::string>();
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--point", *point, "coordinates, e.g. \"1,1/2\"")->required();
        c->callback([=] {
            const auto s = load_space(*ref);
            std::cout << bjlab::dump_json(
                bjlab::smooth_order_report(s, Vec(bjlab::parse_rat_list(*point))));
        });
    }

    // ortho check
    auto* ortho_cmd = app.add_subcommand("ortho", "orthogonality relations");
    ortho_cmd->require_subcommand(1);
    {
        auto* c = ortho_cmd->add_subcommand("check", "evaluate u-vs-v orthogonality relations");
        auto ref = std::make_shared<std::string>();
        auto us = std::make_shared<std::string>();
        auto vs = std::make_shared<std::string>();
        auto relation = std::make_shared<std::string>();
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--u", *us, "left vector")->required();
        c->add_option("--v", *vs, "right vector")->required();
        c->add_option("--relation", *relation, "bj|rho|rho+|rho- (default: report all)")
            ->check(CLI::IsMember({"bj", "rho", "rho+", "rho-"}));
        c->callback([=] {
            const auto s = load_space(*ref);
            const Vec u(bjlab::parse_rat_list(*us));
            const Vec v(bjlab::parse_rat_list(*vs));
            const Rat rp = bjlab::rho_plus(s, u, v);
            const Rat rm = bjlab::rho_minus(s, u, v);
            const Rat r = (rp + rm) / 2;
            Json j;
            j["u"] = bjlab::rats_to_json(u.c);
            j["v"] = bjlab::rats_to_json(v.c);
            j["bj"] = bjlab::is_bj_orthogonal(s, u, v);
            j["rho"] = r == 0;
            j["rho_plus"] = rp == 0;
            j["rho_minus"] = rm == 0;
            Json d;
            d["rho_plus"] = bjlab::format_rat(rp);
            d["rho_minus"] = bjlab::format_rat(rm);
            d["rho"] = bjlab::format_rat(r);
            j["derivatives"] = d;
            if (!relation->empty()) {
                const std::string key = *relation == "rho+"   ? "rho_plus"
                                        : *relation == "rho-" ? "rho_minus"
                                                              : *relation;
                j["relation"] = *relation;
                j["verdict"] = j.at(key).get<bool>();
            }
            std::cout << bjlab::dump_json(j);
        });
    }

    // op check-isometry
    auto* op_cmd = app.add_subcommand("op", "operator-level checks");
    op_cmd->require_subcommand(1);
    {
        auto* c = op_cmd->add_subcommand("check-isometry", "scalar-isometry decision");
        auto ref = std::make_shared<std::string>();
        auto opf = std::make_shared<std::string>();
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--op", *opf, "operator JSON file")->required();
        c->callback([=] {
            const auto s = load_space(*ref);
            const auto t = load_operator(*opf);
            const auto check = bjlab::scalar_isometry_check(s, t);
            Json j;
            j["isometry"] = check.lambda.has_value();
            j["lambda"] = check.lambda ? Json(bjlab::format_rat(*check.lambda)) : Json(nullptr);
            j["singular"] = check.singular;
            if (check.witness) {
                // the only viable factor; the witness refutes it
                j["lambda_candidate"] = bjlab::format_rat(s.norm(bjlab::apply(t, s.vertices()[0])));
                j["witness"] = bjlab::rats_to_json(check.witness->c);
                j["witness_norm"] = bjlab::format_rat(s.norm(*check.witness));
                j["witness_image_norm"] = bjlab::format_rat(s.norm(bjlab::apply(t, *check.witness)));
            } else {
                j["witness"] = nullptr;
            }
            std::cout << bjlab::dump_json(j);
        });
    }

    // preserve at | on | scan
    auto* pre_cmd = app.add_subcommand("preserve", "orthogonality preservation");
    pre_cmd->require_subcommand(1);
    pre_cmd->parse_complete_callback([&] { preserve_context = true; });
    {
        auto* c = pre_cmd->add_subcommand("at", "preservation at one point, with certificate");
        auto ref = std::make_shared<std::string>();
        auto opf = std::make_shared<std::string>();
        auto point = std::make_shared<std::string>();
        auto relation = std::make_shared<std::string>("bj");
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--op", *opf, "operator JSON file")->required();
        c->add_option("--point", *point, "coordinates")->required();
        c->add_option("--relation", *relation, "bj|rho|rho+|rho- (default bj)")
            ->check(CLI::IsMember({"bj", "rho", "rho+", "rho-"}));
        c->callback([=, &exit_code] {
            const auto s = load_space(*ref);
            const auto t = load_operator(*opf);
            const Vec x(bjlab::parse_rat_list(*point));
            if (*relation == "bj") {
                const auto cert = bjlab::preserves_bj_at(s, t, x);
                std::cout << bjlab::dump_json(bjlab::certificate_to_json(cert));
                exit_code = cert.verdict ? 0 : 1;
                return;
            }
            const auto variant = *relation == "rho+"   ? bjlab::RhoVariant::Plus
                                 : *relation == "rho-" ? bjlab::RhoVariant::Minus
                                                       : bjlab::RhoVariant::Both;
            const bool ok = bjlab::preserves_rho_at(s, t, x, variant);
            Json j;
            j["point"] = bjlab::rats_to_json(x.c);
            j["relation"] = *relation;
            j["verdict"] = ok;
            std::cout << bjlab::dump_json(j);
            exit_code = ok ? 0 : 1;
        });
    }
    {
        auto* c = pre_cmd->add_subcommand("on", "preservation on a finite point set");
        auto ref = std::make_shared<std::string>();
        auto opf = std::make_shared<std::string>();
        auto points = std::make_shared<std::string>();
        auto all = std::make_shared<bool>(false);
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--op", *opf, "operator JSON file")->required();
        c->add_option("--points", *points, "semicolon-separated points, e.g. \"1,0;0,1\"")
            ->required();
        c->add_flag("--all", *all, "collect certificates past the first violation");
        c->callback([=, &exit_code] {
            const auto s = load_space(*ref);
            const auto t = load_operator(*opf);
            std::vector<Vec> pts;
            for (auto& row : parse_rows(*points)) pts.push_back(Vec(std::move(row)));
            const auto res = bjlab::preserves_bj_on(s, t, pts, *all);
            Json j;
            j["all_preserved"] = res.all;
            Json certs = Json::array();
            for (const auto& cert : res.certificates)
                certs.push_back(bjlab::certificate_to_json(cert));
            j["certificates"] = certs;
            std::cout << bjlab::dump_json(j);
            exit_code = res.all ? 0 : 1;
        });
    }
    {
        auto* c = pre_cmd->add_subcommand("scan", "per-face preservation classification");
        auto ref = std::make_shared<std::string>();
        auto opf = std::make_shared<std::string>();
        auto samples = std::make_shared<std::size_t>(8);
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--op", *opf, "operator JSON file")->required();
        c->add_option("--samples", *samples, "max interior samples per face (default 8)");
        c->callback([=, &exit_code] {
            const auto s = load_space(*ref);
            const auto t = load_operator(*opf);
            const auto rep = bjlab::preserving_set_scan(s, t, *samples);
            std::cout << bjlab::dump_json(bjlab::scan_to_json(rep));
            exit_code = rep.all_preserved ? 0 : 1;
        });
    }

    // kset search | repro | matrix
    auto* kset_cmd = app.add_subcommand("kset", "K-set experiments");
    kset_cmd->require_subcommand(1);
    {
        auto* c = kset_cmd->add_subcommand("search", "randomized falsification search");
        auto ref = std::make_shared<std::string>();
        auto set_desc = std::make_shared<std::string>("ext");
        auto budget = std::make_shared<std::size_t>(10000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto height = std::make_shared<long>(8);
        auto out = std::make_shared<std::string>();
        auto canonical = std::make_shared<bool>(false);
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--set", *set_desc,
                      "ext | ksmooth:K | facet-interior | points:...;... | hyperplane:coords[:count]");
        c->add_option("--budget", *budget, "trial count (default 10000)");
        c->add_option("--seed", *seed, "rng seed (BJLAB_SEED overrides)");
        c->add_option("--height", *height, "rational entry height bound (default 8)");
        c->add_option("--out", *out, "write the report here instead of stdout");
        c->add_flag("--canonical", *canonical, "emit the canonical form (no wall time)");
        c->callback([=] {
            bjlab::SearchConfig cfg;
            cfg.space_name = *ref;
            cfg.set = parse_candidate_set(*set_desc);
            cfg.budget = *budget;
            cfg.seed = *seed;
            if (const char* env = std::getenv("BJLAB_SEED"))
                cfg.seed = std::strtoull(env, nullptr, 10);
            cfg.perturbation_height = *height;
            const auto rep = bjlab::falsification_search(load_space(*ref), cfg);
            emit(*canonical ? bjlab::search_report_canonical_json(rep)
                            : bjlab::search_report_to_json(rep),
                 *out);
        });
    }
    {
        auto* c = kset_cmd->add_subcommand("repro", "reproduce the bundled counterexamples");
        c->callback(
            [] { std::cout << bjlab::dump_json(bjlab::repro_report_to_json(bjlab::reproduce_counterexamples())); });
    }
    {
        auto* c = kset_cmd->add_subcommand("matrix", "equivalence-theorem experiment row");
        auto ref = std::make_shared<std::string>();
        auto opf = std::make_shared<std::string>();
        c->add_option("--space", *ref, "space JSON file or bundled name")->required();
        c->add_option("--op", *opf, "operator JSON file")->required();
        c->callback([=, &exit_code] {
            const auto row = bjlab::equivalence_matrix(load_space(*ref), load_operator(*opf));
            std::cout << bjlab::dump_json(bjlab::equivalence_row_to_json(row));
            if (row.violation) exit_code = kExitInternal;  // defect or refutation: escalate
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const bjlab::HypothesisViolated& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return preserve_context ? 2 : kExitData;
    } catch (const bjlab::NotBijective& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return preserve_context ? 2 : kExitData;
    } catch (const bjlab::ZeroVector& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return preserve_context ? 2 : kExitData;
    } catch (const bjlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return exit_code;
}
