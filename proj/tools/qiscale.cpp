// qiscale: batch experiment runner over the core library. Every subcommand
// writes report.json and rows.csv into --out and prints the result object to
// stdout; all randomness comes from the explicit --seed.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qiscale/cayley.hpp"
#include "qiscale/folner.hpp"
#include "qiscale/qi_map.hpp"
#include "qiscale/realization.hpp"
#include "qiscale/scaling.hpp"
#include "qiscale/tree_partition.hpp"

using namespace qiscale;
using nlohmann::json;

namespace {

std::size_t budget_bytes() {
    const char* mb = std::getenv("QISCALE_BUDGET_MB");
    if (!mb) return 0;
    return static_cast<std::size_t>(std::stoull(mb)) * 1024 * 1024;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    json config;
    std::uint64_t seed = 1;
    json result;
    std::vector<std::string> csv;  // rows.csv lines, header first
};

void emit(const std::string& subcommand, const std::string& out_dir,
          Report rep) {
    json j;
    j["subcommand"] = subcommand;
    j["config"] = rep.config;
    j["config_hash"] = fnv1a_hex(subcommand + rep.config.dump());
    j["seed"] = rep.seed;
    j["result"] = rep.result;

    std::filesystem::create_directories(out_dir);
    {
        std::ofstream os(out_dir + "/report.json", std::ios::binary);
        os << j.dump(2) << "\n";
    }
    {
        std::ofstream os(out_dir + "/rows.csv", std::ios::binary);
        for (const auto& line : rep.csv) os << line << "\n";
    }
    std::cout << rep.result.dump() << "\n";
}

// Named map presets sized by --n (target test-set level) or --radius.
struct BuiltMap {
    QIMap map;
    json desc;
};

QIMap floor_half(const WindowPtr& dom, const WindowPtr& cod) {
    return make_map(dom, cod,
                    [](const std::string& id) {
                        long long v = std::stoll(id);
                        long long q = v >= 0 ? v / 2 : -((-v + 1) / 2);
                        return std::to_string(q);
                    },
                    2.0, 1);
}

BuiltMap build_map(const std::string& preset, long long n, int radius) {
    BuiltMap out;
    out.desc["preset"] = preset;
    if (preset == "2z-in-z") {
        int sub = static_cast<int>(n / 2) + 5;
        auto incl = sublattice_inclusion({{2}}, sub, 2 * (sub + 1), budget_bytes());
        out.map = std::move(incl.map);
        return out;
    }
    if (preset == "intro") {
        auto dom = enumerate_window(GroupSpec::free_abelian(1),
                                    static_cast<int>(n) + 10, budget_bytes());
        auto cod = enumerate_window(GroupSpec::free_abelian(1),
                                    2 * (static_cast<int>(n) + 11), budget_bytes());
        out.map = make_map(dom, cod,
                           [](const std::string& id) {
                               long long v = std::stoll(id);
                               return std::to_string(v >= 0 ? v : 2 * v);
                           },
                           2.0, 1);
        return out;
    }
    if (preset == "floor2") {
        auto dom = enumerate_window(GroupSpec::free_abelian(1),
                                    2 * static_cast<int>(n) + 10, budget_bytes());
        auto cod = enumerate_window(GroupSpec::free_abelian(1),
                                    static_cast<int>(n) + 7, budget_bytes());
        out.map = floor_half(dom, cod);
        return out;
    }
    if (preset.rfind("identity:", 0) == 0) {
        auto spec = GroupSpec::parse(preset.substr(9));
        out.map = identity_map(enumerate_window(spec, radius, budget_bytes()));
        return out;
    }
    if (preset.rfind("proj:", 0) == 0 || preset.rfind("embed:", 0) == 0) {
        bool proj = preset.rfind("proj:", 0) == 0;
        auto rest = preset.substr(proj ? 5 : 6);
        auto colon = rest.rfind(':');
        if (colon == std::string::npos)
            throw ParseError("expected <spec>:<order> in " + preset);
        auto spec = GroupSpec::parse(rest.substr(0, colon));
        long long order = std::stoll(rest.substr(colon + 1));
        auto base = enumerate_window(spec, radius, budget_bytes());
        auto prod = product_with_cyclic(base, order);
        out.map = proj ? std::move(prod.project) : std::move(prod.embed);
        return out;
    }
    throw ParseError("unknown map preset: " + preset);
}

FolnerFamily codomain_boxes(const QIMap& f, long long n) {
    auto spec = GroupSpec::parse(f.codomain->host_name());
    int stride = static_cast<int>(std::max<long long>(1, n / 10));
    int count = static_cast<int>(n / stride);
    return standard_folner(spec, f.codomain, count, stride);
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

json rat_json(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

int run(int argc, char** argv) {
    CLI::App app{"windowed quasi-isometry scaling experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_dir = ".";
    std::uint64_t seed = 1;
    app.add_option("--out", out_dir, "report output directory");
    app.add_option("--seed", seed, "run seed (explicit, no wall-clock default)");

    std::string group = "zd:1", map_preset = "2z-in-z", family = "boxes";
    std::string kappa = "1", sc_desc = "trivial", ends = "two";
    long long n = 10, m = 2;
    int radius = 10, count = 5, stride = 1, k = 2, R = 2, l_max = 3, margin = 0;
    int piece_m = 2, piece_n = 1;
    double tol = 0.02;

    auto* c_window = app.add_subcommand("window", "enumerate and export a window");
    c_window->add_option("--group", group)->required();
    c_window->add_option("--radius", radius)->required();

    auto* c_folner = app.add_subcommand("folner", "standard Folner family CSV");
    c_folner->add_option("--group", group)->required();
    c_folner->add_option("--radius", radius)->required();
    c_folner->add_option("--count", count)->required();
    c_folner->add_option("--stride", stride);

    auto* c_estimate = app.add_subcommand("estimate", "scaling estimate trace");
    c_estimate->add_option("--map", map_preset)->required();
    c_estimate->add_option("--family", family);
    c_estimate->add_option("--n", n)->required();
    c_estimate->add_option("--radius", radius);
    c_estimate->add_option("--tol", tol);

    auto* c_defect = app.add_subcommand("defect", "defect report for a kappa");
    c_defect->add_option("--map", map_preset)->required();
    c_defect->add_option("--kappa", kappa)->required();
    c_defect->add_option("--n", n)->required();
    c_defect->add_option("--radius", radius);
    c_defect->add_option("--R", R);

    auto* c_verify = app.add_subcommand("verify-qi", "check the QI inequalities");
    c_verify->add_option("--map", map_preset)->required();
    c_verify->add_option("--n", n);
    c_verify->add_option("--radius", radius);
    c_verify->add_option("--margin", margin);

    auto* c_partition = app.add_subcommand("partition", "spanning-tree partition");
    c_partition->add_option("--group", group)->required();
    c_partition->add_option("--radius", radius)->required();
    c_partition->add_option("--k", k)->required();

    auto* c_realize = app.add_subcommand("realize", "escalating bijection matching");
    c_realize->add_option("--map", map_preset)->required();
    c_realize->add_option("--n", n);
    c_realize->add_option("--radius", radius);
    c_realize->add_option("--l-max", l_max);

    auto* c_realize_mn = app.add_subcommand("realize-mn", "rational realization");
    c_realize_mn->add_option("--map", map_preset)->required();
    c_realize_mn->add_option("--n", n);
    c_realize_mn->add_option("--radius", radius);
    c_realize_mn->add_option("--m-piece", piece_m);
    c_realize_mn->add_option("--n-piece", piece_n);
    c_realize_mn->add_option("--l-max", l_max);

    auto* c_sc = app.add_subcommand("sc-lamp", "lamplighter scaling group");
    c_sc->add_option("--n", n)->required();
    c_sc->add_option("--ends", ends);

    auto* c_qi = app.add_subcommand("qi-lamp", "lamplighter QI predicate");
    c_qi->add_option("--n", n)->required();
    c_qi->add_option("--m", m)->required();
    c_qi->add_option("--sc", sc_desc)->required();

    CLI11_PARSE(app, argc, argv);

    Report rep;
    rep.seed = seed;

    if (c_window->parsed()) {
        rep.config = {{"group", group}, {"radius", radius}};
        auto win = enumerate_window(GroupSpec::parse(group), radius, budget_bytes());
        std::filesystem::create_directories(out_dir);
        std::ofstream os(out_dir + "/window.txt", std::ios::binary);
        win->save(os);
        std::size_t interior = 0;
        for (std::int32_t v = 0; v < static_cast<std::int32_t>(win->size()); ++v)
            if (win->is_interior(v)) ++interior;
        rep.result = {{"size", win->size()},
                      {"interior", interior},
                      {"degree_bound", win->degree_bound()},
                      {"file", "window.txt"}};
        rep.csv.push_back("id,dist_center");
        for (std::int32_t v = 0; v < static_cast<std::int32_t>(win->size()); ++v)
            rep.csv.push_back(win->id(v) + "," + std::to_string(win->dist_center(v)));
        emit("window", out_dir, std::move(rep));
        return 0;
    }
    if (c_folner->parsed()) {
        rep.config = {{"group", group}, {"radius", radius}, {"count", count},
                      {"stride", stride}};
        auto spec = GroupSpec::parse(group);
        auto win = enumerate_window(spec, radius, budget_bytes());
        auto fam = standard_folner(spec, win, count, stride);
        std::ostringstream csv;
        fam.write_csv(csv);
        std::istringstream in(csv.str());
        for (std::string line; std::getline(in, line);) rep.csv.push_back(line);
        rep.result = {{"levels", fam.size()},
                      {"final_ratio1", rat_json(fam.stats().back().ratio1)},
                      {"final_ratio2", rat_json(fam.stats().back().ratio2)}};
        emit("folner", out_dir, std::move(rep));
        return 0;
    }
    if (c_estimate->parsed()) {
        rep.config = {{"map", map_preset}, {"family", family}, {"n", n},
                      {"radius", radius}, {"tol", tol}};
        auto built = build_map(map_preset, n, radius);
        auto fam = codomain_boxes(built.map, n);
        auto trace = scaling_estimate(built.map, fam);
        rep.csv.push_back("level,ratio,ratio_float");
        for (std::size_t i = 0; i < trace.ratios.size(); ++i)
            rep.csv.push_back(std::to_string(i + 1) + "," +
                              rat_json(trace.ratios[i]).get<std::string>() + "," +
                              std::to_string(to_double(trace.ratios[i])));
        rep.result = {{"final_ratio", rat_json(trace.final_ratio())},
                      {"final_ratio_float", to_double(trace.final_ratio())},
                      {"max_oscillation", trace.max_oscillation},
                      {"verdict", trace.stable(tol) ? "stable" : "unstable"}};
        emit("estimate", out_dir, std::move(rep));
        return 0;
    }
    if (c_defect->parsed()) {
        rep.config = {{"map", map_preset}, {"kappa", kappa}, {"n", n},
                      {"radius", radius}, {"R", R}};
        auto built = build_map(map_preset, n, radius);
        auto fam = codomain_boxes(built.map, n);
        std::vector<TestSet> sets;
        for (std::size_t i = 0; i < fam.size(); ++i)
            sets.push_back({"level" + std::to_string(i + 1), fam.sets()[i]});
        auto drep = defect(built.map, parse_rat(kappa), sets, R);
        rep.csv.push_back("set,size,preimage,boundary,defect,ratio,skipped");
        for (const auto& row : drep.rows)
            rep.csv.push_back(row.set_name + "," + std::to_string(row.size_a) + "," +
                              std::to_string(row.preimage) + "," +
                              std::to_string(row.boundary) + "," +
                              rat_json(row.defect).get<std::string>() + "," +
                              rat_json(row.ratio).get<std::string>() + "," +
                              (row.skipped ? "yes" : "no"));
        rep.result = {{"kappa", rat_json(drep.kappa)},
                      {"R", drep.R},
                      {"sup_constant", rat_json(drep.sup_constant)},
                      {"sup_constant_float", to_double(drep.sup_constant)}};
        emit("defect", out_dir, std::move(rep));
        return 0;
    }
    if (c_verify->parsed()) {
        rep.config = {{"map", map_preset}, {"n", n}, {"radius", radius},
                      {"margin", margin}};
        auto built = build_map(map_preset, n, radius);
        auto v = verify_qi(built.map, margin);
        rep.result = {{"metric_ok", v.metric_ok},
                      {"density_radius", v.density_radius},
                      {"density_ok", v.density_ok},
                      {"checked_pairs", v.checked_pairs}};
        rep.csv.push_back("metric_ok,density_radius,checked_pairs");
        rep.csv.push_back(std::string(v.metric_ok ? "yes" : "no") + "," +
                          std::to_string(v.density_radius) + "," +
                          std::to_string(v.checked_pairs));
        emit("verify-qi", out_dir, std::move(rep));
        return 0;
    }
    if (c_partition->parsed()) {
        rep.config = {{"group", group}, {"radius", radius}, {"k", k}};
        auto win = enumerate_window(GroupSpec::parse(group), radius, budget_bytes());
        auto p = partition_window(win, k, seed);
        auto check = verify_partition(win, p);
        std::size_t exact = 0;
        for (std::size_t i = 0; i < p.pieces.size(); ++i)
            if (!(p.remainder_index && *p.remainder_index == i)) ++exact;
        rep.result = {{"pieces", exact},
                      {"has_remainder", p.remainder_index.has_value()},
                      {"verifier_ok", check.ok},
                      {"verifier_failure", check.failure}};
        rep.csv.push_back("piece,size,diameter,remainder");
        for (std::size_t i = 0; i < p.pieces.size(); ++i)
            rep.csv.push_back(
                std::to_string(i) + "," + std::to_string(p.pieces[i].size()) + "," +
                std::to_string(p.diameters[i]) + "," +
                ((p.remainder_index && *p.remainder_index == i) ? "yes" : "no"));
        std::filesystem::create_directories(out_dir);
        std::ofstream os(out_dir + "/partition.json", std::ios::binary);
        os << partition_to_json(p) << "\n";
        emit("partition", out_dir, std::move(rep));
        return check.ok ? 0 : 1;
    }
    if (c_realize->parsed()) {
        rep.config = {{"map", map_preset}, {"n", n}, {"radius", radius},
                      {"l_max", l_max}};
        auto built = build_map(map_preset, n, radius);
        auto r = realize_bijection(built.map, l_max);
        rep.result = json::parse(realization_to_json(built.map, r));
        rep.result["success"] = r.success;
        rep.result.erase("bijection");  // full pairing goes to rows.csv
        rep.csv.push_back("domain_id,codomain_id");
        for (const auto& [x, y] : r.bijection)
            rep.csv.push_back(built.map.domain->id(x) + "," +
                              built.map.codomain->id(y));
        emit("realize", out_dir, std::move(rep));
        return 0;
    }
    if (c_realize_mn->parsed()) {
        rep.config = {{"map", map_preset}, {"n", n}, {"radius", radius},
                      {"m_piece", piece_m}, {"n_piece", piece_n},
                      {"l_max", l_max}};
        auto built = build_map(map_preset, n, radius);
        auto r = realize_mn(built.map, piece_m, piece_n, l_max, seed);
        rep.result = {{"L", r.L},
                      {"piece_diameter", r.piece_diameter},
                      {"displacement_bound", r.displacement_bound},
                      {"max_displacement", r.max_displacement},
                      {"matched_pieces", r.psi.size()},
                      {"within_bound", r.max_displacement <= r.displacement_bound}};
        rep.csv.push_back("domain_piece,codomain_piece");
        for (const auto& [p, q] : r.psi)
            rep.csv.push_back(std::to_string(p) + "," + std::to_string(q));
        emit("realize-mn", out_dir, std::move(rep));
        return 0;
    }
    if (c_sc->parsed()) {
        rep.config = {{"n", n}, {"ends", ends}};
        auto e = ends == "one" ? Endedness::OneEnded : Endedness::TwoEnded;
        auto g = lamplighter_sc(n, e);
        rep.result = {{"scaling_group", g.to_string()}, {"primes", g.primes}};
        rep.csv.push_back("scaling_group");
        rep.csv.push_back(g.to_string());
        emit("sc-lamp", out_dir, std::move(rep));
        return 0;
    }
    if (c_qi->parsed()) {
        rep.config = {{"n", n}, {"m", m}, {"sc", sc_desc}};
        auto r = qi_lamplighter_predicate(n, m, ScalingGroupDesc::parse(sc_desc));
        rep.result = {{"qi", r.qi}, {"base", r.base}, {"exp_n", r.exp_n},
                      {"exp_m", r.exp_m}};
        rep.csv.push_back("qi,base,exp_n,exp_m");
        rep.csv.push_back(std::string(r.qi ? "true" : "false") + "," +
                          std::to_string(r.base) + "," + std::to_string(r.exp_n) +
                          "," + std::to_string(r.exp_m));
        emit("qi-lamp", out_dir, std::move(rep));
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        json err{{"error", {{"type", "qiscale"}, {"message", e.what()}}}};
        std::cout << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err{{"error", {{"type", "runtime"}, {"message", e.what()}}}};
        std::cout << err.dump() << "\n";
        return 1;
    }
}
