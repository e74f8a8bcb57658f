// dlgeo: build lamplighter / Diestel-Leader geometry objects, run the
// measurement experiments, and export graphs and reports.

#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlgeo/qi.hpp"
#include "dlgeo/sampling.hpp"
#include "dlgeo/util.hpp"

using namespace dlgeo;

namespace {

// ---------------------------------------------------------------- config

/// JSON config files: top-level keys are long option names, one nested
/// object per subcommand. Command-line flags override config values.
class JsonConfig : public CLI::ConfigBase {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

private:
    static void flatten(const nlohmann::json& j, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto deeper = parents;
                deeper.push_back(key);
                flatten(value, deeper, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& entry : value) item.inputs.push_back(scalar(entry));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }

    static std::string scalar(const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }
};

// ---------------------------------------------------------------- helpers

GroupPtr parse_group_spec(const std::string& spec) {
    std::string body = spec;
    int power = 1;
    if (auto caret = body.rfind('^'); caret != std::string::npos) {
        try {
            power = std::stoi(body.substr(caret + 1));
        } catch (const std::exception&) {
            throw InvalidInputError("bad power in group spec: " + spec);
        }
        body = body.substr(0, caret);
    }
    GroupPtr base;
    if (body.rfind("cyclic:", 0) == 0) {
        int q = 0;
        try {
            q = std::stoi(body.substr(7));
        } catch (const std::exception&) {
            throw InvalidInputError("bad order in group spec: " + spec);
        }
        base = make_cyclic(q);
    } else if (body.rfind("table:", 0) == 0) {
        base = std::make_shared<const FiniteGroup>(group_from_json_file(body.substr(6)));
    } else {
        throw InvalidInputError("group spec must be cyclic:q, cyclic:q^k, table:file or "
                                "table:file^k, got: " + spec);
    }
    return power == 1 ? base : make_power(*base, power);
}

struct Output {
    std::string path; // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (text.empty() || text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidInputError("cannot open output file: " + path);
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
    }
};

struct GlobalOptions {
    std::size_t capacity = kDefaultCapacity;
    std::uint64_t seed = 1;
    int threads = 1;
    bool error_json = false;
};

template <class V>
std::string graph_text(Ball<V>& ball, const std::string& format) {
    attach_labels(ball);
    if (format == "dot") return to_dot(ball.graph);
    if (format == "json") return to_json(ball.graph);
    throw InvalidInputError("format must be dot or json, got: " + format);
}

std::string csv_join(const std::vector<long long>& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(row[i]);
    }
    return out;
}

// ---------------------------------------------------------------- selftest

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

std::vector<Check> run_selftest(std::size_t capacity) {
    std::vector<Check> checks;
    auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back(Check{name, ok, detail});
    };

    {
        bool ok = true;
        for (int q : {2, 3}) {
            GroupPtr g = make_cyclic(q);
            Sampler rng(1000 + q);
            for (int t = 0; t < 2000 && ok; ++t) {
                GroupLaurent a = rng.series(g, -3, 3), b = rng.series(g, -3, 3),
                             c = rng.series(g, -3, 3);
                ok = ldist(a, c) >= std::min(ldist(a, b), ldist(b, c)) &&
                     ldist(lmul(c, a), lmul(c, b)) == ldist(a, b) &&
                     ldist(lmul(a, c), lmul(b, c)) == ldist(a, b);
            }
        }
        record("ultrametric and bi-invariance", ok);
    }
    {
        bool ok = true;
        for (int q : {2, 3}) {
            Tree tree(make_cyclic(q));
            Ball<TreeVertex> ball = tree.ball(tree.root(), 4, capacity);
            for (int v = 0; v < ball.graph.vertex_count() && ok; ++v) {
                auto nb = tree.neighbors(ball.vertices[v]);
                ok = static_cast<int>(nb.size()) == q + 1;
                if (ball.depth[v] < 4) ok = ok && ball.graph.degree(v) == q + 1;
            }
            ok = ok && ball.graph.edge_count() == ball.graph.vertex_count() - 1;
        }
        record("tree regularity", ok);
    }
    {
        Tree tree(make_cyclic(2));
        GroupPtr g = tree.group_ptr();
        bool ok = true;
        std::vector<GroupLaurent> all{GroupLaurent(g)};
        for (int i = -2; i <= 1; ++i) {
            std::vector<GroupLaurent> next;
            for (const auto& s : all)
                for (int e = 0; e < 2; ++e) {
                    CoeffVec c = s.coeffs();
                    if (e) c.emplace_back(i, e);
                    next.emplace_back(g, std::move(c));
                }
            all = std::move(next);
        }
        for (const auto& a : all)
            for (const auto& b : all)
                for (int t = -3; t <= 3 && ok; ++t) {
                    Valuation v = ldist(a, b);
                    bool glued = !v.is_finite() || t >= -v.value();
                    ok = (tree.vertex_of(a, t) == tree.vertex_of(b, t)) == glued;
                }
        record("gluing rule", ok);
    }
    {
        Lamplighter lamp(make_cyclic(2));
        Sampler rng(77);
        bool ok = true;
        for (int t = 0; t < 2000 && ok; ++t) {
            LampElement a = rng.lamp(lamp, 3), b = rng.lamp(lamp, 3), c = rng.lamp(lamp, 3);
            ok = lamp.mul(lamp.mul(a, b), c) == lamp.mul(a, lamp.mul(b, c)) &&
                 lamp.mul(lamp.inv(a), a) == lamp.identity() &&
                 lamp.sigma(lamp.mul(a, b)) == lamp.mul(lamp.sigma(a), lamp.sigma(b));
        }
        record("lamplighter group laws and sigma", ok);
    }
    {
        bool ok = true;
        DLGraph dl23(make_cyclic(2), make_cyclic(3));
        Ball<HVertex> ball = dl23.ball(dl23.base(), 5, capacity);
        for (int v = 0; v < ball.graph.vertex_count() && ok; ++v) {
            ok = static_cast<int>(dl23.neighbors(ball.vertices[v]).size()) == 5;
            if (ball.depth[v] < 5) ok = ok && ball.graph.degree(v) == 5;
        }
        ok = ok && is_connected(ball.graph);
        record("horosphere degree and connectivity", ok);
    }
    {
        Lamplighter lamp(make_cyclic(3));
        auto stab = lamp.stabilizer(lamp.dl().base(), 4, capacity);
        bool ok = stab.size() == 3;
        OrbitCover cover = lamp.orbit_covers(lamp.dl().ball(lamp.dl().base(), 3, capacity), 6);
        ok = ok && cover.covered;
        record("stabilizer size and orbit cover", ok);
    }
    {
        Lamplighter lamp(make_cyclic(2));
        auto gens = lamp.edge_generators();
        bool ok = gens.size() == 6;
        for (const auto& s : gens) {
            LampElement si = lamp.inv(s);
            ok = ok && std::find(gens.begin(), gens.end(), si) != gens.end();
        }
        record("edge generators", ok);
    }
    {
        auto grid = default_k_grid();
        CollapseReport rep = collapse_experiment(make_cyclic(2), 2, 5, 4, grid, capacity);
        record("collapse metric law", rep.max_defect <= Rational(2),
               "max defect " + rational_to_string(rep.max_defect));
    }
    {
        RelabelIso iso(make_cyclic(2), 2, make_cyclic(4), 1);
        Ball<HVertex> a = iso.left_dl().ball(iso.left_dl().base(), 3, capacity);
        Ball<HVertex> b = iso.right_dl().ball(iso.right_dl().base(), 3, capacity);
        record("relabeling isometry", ball_isomorphic(a.graph, 0, b.graph, 0));
    }
    {
        DLGraph dl(make_cyclic(2), make_cyclic(2));
        CycleSearchResult cyc = dl.find_long_cycle(dl.base(), 12, 10, capacity);
        record("long cycles", cyc.found,
               "length " + std::to_string(cyc.cycle.size()) + " at radius " +
                   std::to_string(cyc.radius_searched));
    }
    return checks;
}

// ---------------------------------------------------------------- main

int run(int argc, char** argv) {
    CLI::App app{"exact lamplighter / Diestel-Leader geometry toolkit"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file with option defaults");

    GlobalOptions global;
    app.add_option("--capacity", global.capacity, "vertex cap per generated ball")
        ->envname("DLGEO_CAPACITY");
    app.add_option("--seed", global.seed, "random seed for sampled basepoints");
    app.add_option("--threads", global.threads, "worker cap for internal parallelism");
    app.add_flag("--error-json", global.error_json, "emit machine-readable errors");

    std::string groupSpec = "cyclic:2", rightSpec, dlSpec, leftSpec;
    std::string format = "dot", outPath, space = "tree";
    int radius = 4, window = 8, basepoints = 1, lmin = 20, maxRadius = 12, blockSize = 2;

    auto addOut = [&](CLI::App* cmd) {
        cmd->add_option("--out", outPath, "output file (default stdout)");
    };
    auto addGroup = [&](CLI::App* cmd) {
        cmd->add_option("--group", groupSpec,
                        "coefficient group (cyclic:q, cyclic:q^k, table:file)");
    };

    CLI::App* treeBall = app.add_subcommand("tree-ball", "export a tree ball");
    addGroup(treeBall);
    treeBall->add_option("--radius", radius, "ball radius");
    treeBall->add_option("--format", format, "dot or json");
    addOut(treeBall);

    CLI::App* dlBall = app.add_subcommand("dl-ball", "export a horosphere ball");
    addGroup(dlBall);
    dlBall->add_option("--right-group", rightSpec, "right coefficient group (default: --group)");
    dlBall->add_option("--dl", dlSpec, "shorthand q,r for cyclic groups on both sides");
    dlBall->add_option("--radius", radius, "ball radius");
    dlBall->add_option("--format", format, "dot or json");
    addOut(dlBall);

    CLI::App* dist = app.add_subcommand("dist", "pairwise distances of ball vertices, CSV");
    addGroup(dist);
    dist->add_option("--space", space, "tree or dl");
    dist->add_option("--radius", radius, "ball radius");
    addOut(dist);

    CLI::App* profile = app.add_subcommand("profile", "BFS sphere sizes around basepoints, CSV");
    addGroup(profile);
    profile->add_option("--dl", dlSpec, "shorthand q,r for cyclic groups on both sides");
    profile->add_option("--right-group", rightSpec, "right coefficient group");
    profile->add_option("--radius", radius, "profile radius");
    profile->add_option("--basepoints", basepoints, "number of sampled basepoints");
    addOut(profile);

    CLI::App* orbit = app.add_subcommand("orbit", "stabilizer and orbit-cover report");
    addGroup(orbit);
    orbit->add_option("--radius", radius, "ball radius");
    orbit->add_option("--window", window, "search window for supports and shifts");
    addOut(orbit);

    CLI::App* qiOrbit = app.add_subcommand("qi-orbit", "orbit map quasi-isometry report");
    addGroup(qiOrbit);
    qiOrbit->add_option("--radius", radius, "Cayley ball radius");
    addOut(qiOrbit);

    CLI::App* collapse = app.add_subcommand("collapse", "collapse map metric and Hausdorff report");
    addGroup(collapse);
    collapse->add_option("--k", blockSize, "height block size");
    collapse->add_option("--radius", radius, "tree ball radius");
    addOut(collapse);

    CLI::App* isocheck = app.add_subcommand("isocheck", "relabeling isometry verdict");
    isocheck->add_option("--left", leftSpec, "left group spec")->required();
    isocheck->add_option("--right", rightSpec, "right group spec")->required();
    isocheck->add_option("--radius", radius, "ball radius");
    addOut(isocheck);

    CLI::App* cycles = app.add_subcommand("cycles", "search for a long simple cycle");
    addGroup(cycles);
    cycles->add_option("--lmin", lmin, "required cycle length");
    cycles->add_option("--max-radius", maxRadius, "largest ball radius to search");
    addOut(cycles);

    CLI::App* selftest = app.add_subcommand("selftest", "run the invariant battery");
    addOut(selftest);

    // let global flags appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
        app.exit(e);
        return 2;
    }

    worker_cap() = std::max(1, global.threads);
    Output out{outPath};

    auto splitPower = [&](const std::string& spec) {
        if (auto caret = spec.rfind('^'); caret != std::string::npos)
            return std::pair<std::string, int>{spec.substr(0, caret),
                                               std::stoi(spec.substr(caret + 1))};
        return std::pair<std::string, int>{spec, 1};
    };

    auto leftRightGroups = [&]() -> std::pair<GroupPtr, GroupPtr> {
        if (!dlSpec.empty()) {
            auto comma = dlSpec.find(',');
            if (comma == std::string::npos)
                throw InvalidInputError("--dl expects q,r, got: " + dlSpec);
            return {make_cyclic(std::stoi(dlSpec.substr(0, comma))),
                    make_cyclic(std::stoi(dlSpec.substr(comma + 1)))};
        }
        GroupPtr left = parse_group_spec(groupSpec);
        GroupPtr right = rightSpec.empty() ? left : parse_group_spec(rightSpec);
        return {left, right};
    };

    try {
        if (*treeBall) {
            Tree tree(parse_group_spec(groupSpec));
            Ball<TreeVertex> ball = tree.ball(tree.root(), radius, global.capacity);
            out.write(graph_text(ball, format));
        } else if (*dlBall) {
            auto [left, right] = leftRightGroups();
            DLGraph dl(left, right);
            Ball<HVertex> ball = dl.ball(dl.base(), radius, global.capacity);
            out.write(graph_text(ball, format));
        } else if (*dist) {
            std::ostringstream csv;
            csv << "u,v,dist\n";
            if (space == "tree") {
                Tree tree(parse_group_spec(groupSpec));
                Ball<TreeVertex> ball = tree.ball(tree.root(), radius, global.capacity);
                for (std::size_t u = 0; u < ball.vertices.size(); ++u)
                    for (std::size_t v = u + 1; v < ball.vertices.size(); ++v)
                        csv << u << "," << v << ","
                            << tree.distance(ball.vertices[u], ball.vertices[v]) << "\n";
            } else if (space == "dl") {
                auto [left, right] = leftRightGroups();
                DLGraph dl(left, right);
                Ball<HVertex> ball = dl.ball(dl.base(), radius, global.capacity);
                for (std::size_t u = 0; u < ball.vertices.size(); ++u) {
                    auto row = dl.distances_to(ball.vertices[u], ball.vertices, global.capacity);
                    for (std::size_t v = u + 1; v < ball.vertices.size(); ++v)
                        csv << u << "," << v << "," << row[v] << "\n";
                }
            } else {
                throw InvalidInputError("--space must be tree or dl, got: " + space);
            }
            out.write(csv.str());
        } else if (*profile) {
            auto [left, right] = leftRightGroups();
            DLGraph dl(left, right);
            Sampler rng(global.seed);
            std::ostringstream csv;
            if (basepoints <= 1) {
                csv << "radius,size\n";
                auto prof = dl.sphere_profile(dl.base(), radius, global.capacity);
                for (std::size_t r = 0; r < prof.size(); ++r)
                    csv << r << "," << prof[r] << "\n";
            } else {
                csv << "basepoint";
                for (int r = 0; r <= radius; ++r) csv << ",s" << r;
                csv << "\n";
                for (int b = 0; b < basepoints; ++b) {
                    HVertex v = b == 0 ? dl.base() : rng.h_vertex(dl, 3, 4);
                    csv << b << "," << csv_join(dl.sphere_profile(v, radius, global.capacity))
                        << "\n";
                }
            }
            out.write(csv.str());
        } else if (*orbit) {
            Lamplighter lamp(parse_group_spec(groupSpec));
            auto stab = lamp.stabilizer(lamp.dl().base(), window, global.capacity);
            Ball<HVertex> ball = lamp.dl().ball(lamp.dl().base(), radius, global.capacity);
            OrbitCover cover = lamp.orbit_covers(ball, window);
            nlohmann::json j;
            j["window"] = window;
            j["ball_radius"] = radius;
            j["ball_vertices"] = ball.graph.vertex_count();
            j["stabilizer_size"] = stab.size();
            std::vector<std::string> stabText;
            for (const auto& s : stab) stabText.push_back(s.to_string());
            j["stabilizer"] = stabText;
            j["covered"] = cover.covered;
            j["uncovered_count"] = cover.uncovered.size();
            out.write(j.dump());
            if (!cover.covered) return 1;
        } else if (*qiOrbit) {
            Lamplighter lamp(parse_group_spec(groupSpec));
            auto grid = default_k_grid();
            QIReport report = orbit_qi_report(lamp, radius, grid, global.capacity);
            out.write(report.to_json());
        } else if (*collapse) {
            auto grid = default_k_grid();
            CollapseReport report = collapse_experiment(parse_group_spec(groupSpec), blockSize,
                                                        radius, 2 * blockSize, grid,
                                                        global.capacity);
            out.write(report.to_json());
        } else if (*isocheck) {
            auto [lbase, lpow] = splitPower(leftSpec);
            auto [rbase, rpow] = splitPower(rightSpec);
            RelabelIso iso(parse_group_spec(lbase), lpow, parse_group_spec(rbase), rpow);
            Ball<HVertex> a = iso.left_dl().ball(iso.left_dl().base(), radius, global.capacity);
            Ball<HVertex> b = iso.right_dl().ball(iso.right_dl().base(), radius, global.capacity);
            bool verdict = ball_isomorphic(a.graph, 0, b.graph, 0);
            nlohmann::json j;
            j["left"] = leftSpec;
            j["right"] = rightSpec;
            j["radius"] = radius;
            j["vertices"] = a.graph.vertex_count();
            j["isomorphic"] = verdict;
            out.write(j.dump());
            if (!verdict) return 1;
        } else if (*cycles) {
            auto [left, right] = leftRightGroups();
            DLGraph dl(left, right);
            CycleSearchResult r = dl.find_long_cycle(dl.base(), lmin, maxRadius, global.capacity);
            nlohmann::json j;
            j["lmin"] = lmin;
            j["found"] = r.found;
            j["radius_searched"] = r.radius_searched;
            j["best_length"] = r.best_length;
            if (r.found) {
                j["length"] = r.cycle.size();
                std::vector<std::string> labels;
                for (const auto& v : r.cycle) labels.push_back(v.to_string());
                j["cycle"] = labels;
            }
            out.write(j.dump());
            if (!r.found) return 1;
        } else if (*selftest) {
            auto checks = run_selftest(global.capacity);
            std::ostringstream text;
            bool all = true;
            for (const auto& c : checks) {
                text << (c.ok ? "PASS" : "FAIL") << " " << c.name;
                if (!c.detail.empty()) text << " (" << c.detail << ")";
                text << "\n";
                all = all && c.ok;
            }
            out.write(text.str());
            if (!all) return 1;
        }
    } catch (const CapacityError& e) {
        if (global.error_json)
            std::cerr << nlohmann::json{{"error", {{"type", "capacity"}, {"message", e.what()}}}}
                             .dump()
                      << "\n";
        else
            std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidInputError& e) {
        if (global.error_json)
            std::cerr << nlohmann::json{{"error", {{"type", "usage"}, {"message", e.what()}}}}
                             .dump()
                      << "\n";
        else
            std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        if (global.error_json)
            std::cerr << nlohmann::json{{"error", {{"type", "failure"}, {"message", e.what()}}}}
                             .dump()
                      << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
