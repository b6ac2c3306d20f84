// rectdec: command-line front end. Data goes to stdout as JSON, diagnostics
// to stderr. Exit codes: 0 success / positive verdict, 1 negative verdict,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rectdec/acceptance.hpp"
#include "rectdec/decomposer.hpp"
#include "rectdec/filtration.hpp"
#include "rectdec/gallery.hpp"

using nlohmann::json;
using namespace rectdec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

GridShape parse_shape(const std::string& text) {
    auto sep = text.find('x');
    if (sep == std::string::npos) throw CLI::ValidationError("--shape", "expected NXxNY");
    try {
        return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--shape", "expected NXxNY");
    }
}

GridPoint parse_point(const std::string& text) {
    auto sep = text.find(',');
    if (sep == std::string::npos) throw CLI::ValidationError("--point", "expected X,Y");
    try {
        return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--point", "expected X,Y");
    }
}

GridModule read_module(const std::string& in_path) {
    std::ostringstream buffer;
    if (in_path.empty() || in_path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream f(in_path);
        if (!f) throw std::invalid_argument("cannot open input file: " + in_path);
        buffer << f.rdbuf();
    }
    GridModule m = load_module(buffer.str());
    m.validate();
    return m;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text << "\n";
}

json witness_json(const ExactnessWitness& w) {
    auto subspace_json = [](const Subspace& s) {
        json rows = json::array();
        for (int i = 0; i < s.basis().rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < s.basis().cols(); ++j) row.push_back(s.basis().at(i, j));
            rows.push_back(row);
        }
        return json{{"ambient_dim", s.ambient_dim()}, {"basis", rows}};
    };
    return json{
        {"square", {{"s", {w.square.s.x, w.square.s.y}}, {"t", {w.square.t.x, w.square.t.y}}}},
        {"condition", w.condition == ExactnessWitness::Condition::image ? "image" : "kernel"},
        {"lhs", subspace_json(w.lhs)},
        {"rhs", subspace_json(w.rhs)},
    };
}

json summands_json(const std::vector<std::pair<IntervalShape, int>>& summands) {
    json out = json::array();
    for (const auto& [shape, mult] : summands)
        out.push_back({{"interval", shape.str()},
                       {"rectangle", shape.is_rectangle() ? json(shape.as_rectangle()->str())
                                                          : json(nullptr)},
                       {"multiplicity", mult}});
    return out;
}

int run_gen(const std::string& kind, int m_param, int p, const std::string& shape_text, int count,
            uint64_t seed, bool dual, const std::string& out_path) {
    GridModule mod = zero_module({1, 1}, Field(2));
    json truth;
    if (kind == "psi") {
        mod = psi(m_param, Field(p));
    } else if (kind == "hook") {
        HookSpec spec;
        if (!shape_text.empty()) {
            // widened hull: stretch the three columns and two rows to the
            // corners of the requested shape
            spec.shape = parse_shape(shape_text);
            spec.x1 = 1;
            spec.x2 = (spec.shape.nx + 1) / 2;
            spec.x3 = spec.shape.nx;
            spec.y1 = 1;
            spec.y2 = spec.shape.ny;
        }
        spec.dual = dual;
        spec.p = p;
        mod = hook_counterexample(spec);
    } else if (kind == "random") {
        mod = random_module(parse_shape(shape_text.empty() ? "3x3" : shape_text), Field(p), 3,
                            seed);
    } else if (kind == "rect-sum") {
        auto sample = random_rectangle_decomposable(
            parse_shape(shape_text.empty() ? "4x4" : shape_text), Field(p), count, seed);
        mod = sample.module;
        truth = json::array();
        for (const RectangleSummand& r : sample.summands)
            truth.push_back({{"x1", r.x1}, {"x2", r.x2}, {"y1", r.y1}, {"y2", r.y2}});
    } else {
        std::cerr << "unknown gen kind: " << kind << "\n";
        return kExitUsage;
    }
    write_output(out_path, save_module(mod));
    if (!truth.is_null()) {
        json sidecar{{"summands", truth}};
        if (out_path.empty() || out_path == "-") {
            std::cerr << "ground truth: " << sidecar.dump() << "\n";
        } else {
            write_output(out_path + ".truth.json", sidecar.dump(2));
        }
    }
    return kExitOk;
}

int run_check(const GridModule& m, bool weak, bool strong, const std::string& local_class) {
    if (!local_class.empty()) {
        LocalClass cls;
        if (local_class == "rectangles")
            cls = LocalClass::rectangles;
        else if (local_class == "intervals")
            cls = LocalClass::intervals;
        else if (local_class == "rectangles_plus_top_hooks")
            cls = LocalClass::rectangles_plus_top_hooks;
        else {
            std::cerr << "unknown local class: " << local_class << "\n";
            return kExitUsage;
        }
        bool ok = local_condition_check(m, cls);
        std::cout << json{{"check", "local"}, {"class", local_class}, {"verdict", ok}}.dump(2)
                  << "\n";
        return ok ? kExitOk : kExitNegative;
    }
    ExactnessReport rep = strong ? strong_exact(m) : weak_exact(m);
    json out{{"check", strong ? "strong" : "weak"}, {"verdict", rep.verdict}};
    if (rep.witness) out["witness"] = witness_json(*rep.witness);
    std::cout << out.dump(2) << "\n";
    return rep.verdict ? kExitOk : kExitNegative;
    (void)weak;
}

int run_decompose(const GridModule& m, bool certify) {
    try {
        Decomposition dec = decompose_rectangles(m, certify);
        json out{{"decomposable", true}, {"summands", summands_json(dec.summands)}};
        if (certify) {
            json iso = json::array();
            for (int y = 1; y <= m.ny(); ++y)
                for (int x = 1; x <= m.nx(); ++x) {
                    const Matrix& mat = dec.iso[static_cast<size_t>(y - 1) * m.nx() + (x - 1)];
                    json rows = json::array();
                    for (int i = 0; i < mat.rows(); ++i) {
                        json row = json::array();
                        for (int j = 0; j < mat.cols(); ++j) row.push_back(mat.at(i, j));
                        rows.push_back(row);
                    }
                    iso.push_back({{"node", {x, y}}, {"matrix", rows}});
                }
            out["certificate"] = {{"verified", true}, {"iso", iso}};
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    } catch (const NotWeaklyExact& e) {
        std::cout << json{{"decomposable", false}, {"witness", witness_json(e.witness)}}.dump(2)
                  << "\n";
        return kExitNegative;
    }
}

int run_oracle(const GridModule& m) {
    auto dec = interval_decompose(m);
    if (!dec) {
        std::cout << json{{"interval_decomposable", false}}.dump(2) << "\n";
        std::cerr << "NOT interval-decomposable\n";
        return kExitNegative;
    }
    std::cout
        << json{{"interval_decomposable", true}, {"summands", summands_json(dec->summands)}}.dump(
               2)
        << "\n";
    return kExitOk;
}

int run_skeleton(const GridModule& m, const std::string& point_text) {
    GridPoint t = parse_point(point_text);
    if (t.x < 1 || t.x > m.nx() || t.y < 1 || t.y > m.ny())
        throw std::invalid_argument("--point outside the grid");
    Skeleton sk = t_skeleton(m, t);
    std::cout << json{{"point", {t.x, t.y}},
                      {"cols", sk.cols},
                      {"rows", sk.rows},
                      {"origin_col", sk.origin_col},
                      {"origin_row", sk.origin_row}}
                     .dump(2)
              << "\n";
    return kExitOk;
}

int run_verify(uint64_t seed) {
    json out = json::array();
    bool all_passed = true;
    for (const CriterionResult& r : run_acceptance(seed)) {
        std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.seconds << "s): "
                  << r.detail << "\n";
        out.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
        all_passed = all_passed && r.passed;
    }
    std::cout << out.dump(2) << "\n";
    return all_passed ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rectangle decomposition of persistence modules over finite grids"};
    app.require_subcommand(1);

    std::string in_path, out_path, shape_text, local_class, point_text, gen_kind;
    int m_param = 2, p = 2, count = 5;
    uint64_t seed = 0;
    bool weak = false, strong = false, certify = false, dual = false, verify_all = false;
    bool has_seed = false;

    CLI::App* gen = app.add_subcommand("gen", "generate a named or random module");
    gen->add_option("kind", gen_kind, "psi | hook | random | rect-sum")->required();
    gen->add_option("--m", m_param, "parameter of the psi family");
    gen->add_option("--p", p, "field characteristic (prime)");
    gen->add_option("--shape", shape_text, "grid shape NXxNY");
    gen->add_option("--count", count, "number of rectangle summands (rect-sum)");
    gen->add_option("--seed", seed, "random seed");
    gen->add_flag("--dual", dual, "rotate the hook into its dual");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--in", in_path, "module JSON file (default stdin)");
    };

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a module");
    add_input(validate);

    CLI::App* check = app.add_subcommand("check", "exactness / local-condition verdicts");
    add_input(check);
    check->add_flag("--weak", weak, "weak exactness (default)");
    check->add_flag("--strong", strong, "strong exactness");
    check->add_option("--local", local_class,
                      "rectangles | intervals | rectangles_plus_top_hooks");

    CLI::App* decompose = app.add_subcommand("decompose", "rectangle decomposition");
    add_input(decompose);
    decompose->add_flag("--certify", certify, "emit the re-verified isomorphism");

    CLI::App* oracle = app.add_subcommand("oracle", "greedy interval decomposition");
    add_input(oracle);

    CLI::App* skeleton = app.add_subcommand("skeleton", "finite skeleton through a point");
    add_input(skeleton);
    skeleton->add_option("--point", point_text, "grid point X,Y")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_flag("--all", verify_all, "run every suite");
    verify->add_option("--seed", seed, "random seed (required)")->each([&](const std::string&) {
        has_seed = true;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_kind, m_param, p, shape_text, count, seed, dual,
                                          out_path);
        if (validate->parsed()) {
            GridModule m = read_module(in_path);
            std::cout << json{{"valid", true},
                              {"p", m.field().p()},
                              {"nx", m.nx()},
                              {"ny", m.ny()}}
                             .dump(2)
                      << "\n";
            return kExitOk;
        }
        if (check->parsed()) return run_check(read_module(in_path), weak, strong, local_class);
        if (decompose->parsed()) return run_decompose(read_module(in_path), certify);
        if (oracle->parsed()) return run_oracle(read_module(in_path));
        if (skeleton->parsed()) return run_skeleton(read_module(in_path), point_text);
        if (verify->parsed()) {
            if (!verify_all) {
                std::cerr << "verify requires --all\n";
                return kExitUsage;
            }
            if (!has_seed) {
                std::cerr << "verify requires --seed\n";
                return kExitUsage;
            }
            return run_verify(seed);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
