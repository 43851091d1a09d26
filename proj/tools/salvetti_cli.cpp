#include <salvetti/salvetti.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace salvetti;
using Json = nlohmann::ordered_json;

namespace
{

enum Exit
{
    ok = 0,
    failure = 1,
    parse_error = 2,
    verification_failure = 3,
    unsupported_dimension = 4,
};

struct RunConfig
{
    std::string subcommand;
    std::string input;
    std::vector<std::string> point;
    bool verify = false;
    bool audit = false;
    std::size_t seed_perturb = 64;
    std::string specialize;
    std::string format = "text";
    std::optional<std::size_t> drop_pair;
};

class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Writes each record either as a text line or as one JSON object per line.
class Output
{
public:
    explicit Output(bool json) : json_(json) {}

    bool json() const { return json_; }

    void emit(const std::string& text, const Json& record)
    {
        if (json_)
            std::cout << record.dump() << '\n';
        else
            std::cout << text << '\n';
    }

private:
    bool json_;
};

Json rational_list(const RVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

Json index_list(IndexSet s)
{
    Json out = Json::array();
    for (std::size_t i : s.elements())
        out.push_back(i + 1);
    return out;
}

std::string poincare_string(const std::vector<long>& p)
{
    std::string s;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0)
            continue;
        std::string term;
        if (k == 0 || p[k] != 1)
            term = std::to_string(p[k]);
        if (k >= 1)
            term += "t";
        if (k >= 2)
            term += "^" + std::to_string(k);
        s += (s.empty() ? "" : " + ") + term;
    }
    return s.empty() ? "0" : s;
}

std::string flat_label(IndexSet s)
{
    std::string out;
    for (std::size_t i : s.elements())
        out += (out.empty() ? "" : ",") + std::to_string(i + 1);
    return "X{" + out + "}";
}

struct Loaded
{
    Arrangement arrangement;
    std::optional<RPoint> hint;
};

Loaded load(const RunConfig& cfg)
{
    std::ifstream in(cfg.input);
    if (!in)
        throw InputError("cannot open " + cfg.input);
    std::stringstream ss;
    ss << in.rdbuf();
    Loaded l{parse_arrangement(ss.str()), parse_basepoint_hint(ss.str())};
    if (!cfg.point.empty()) {
        RPoint p;
        for (const auto& w : cfg.point) {
            auto q = parse_rational(w);
            if (!q)
                throw InputError("malformed base point coordinate `" + w + "`");
            p.push_back(*q);
        }
        l.hint = p;
    }
    if (l.hint && l.hint->size() != l.arrangement.dimension())
        throw InputError("base point has " + std::to_string(l.hint->size()) + " coordinates, arrangement dimension is " +
                         std::to_string(l.arrangement.dimension()));
    return l;
}

Pipeline build(const RunConfig& cfg, Output& out)
{
    Loaded l = load(cfg);
    Pipeline p = Pipeline::run(std::move(l.arrangement), l.hint, cfg.seed_perturb);
    Json rec{{"point", rational_list(p.base_point)}};
    std::string text = "base point: " + to_string(p.base_point);
    if (l.hint && *l.hint != p.base_point) {
        rec["perturbed_from"] = rational_list(*l.hint);
        text += " (perturbed from " + to_string(*l.hint) + ")";
    }
    out.emit(text, rec);
    return p;
}

// ---------------------------------------------------------------------------

int cmd_info(const RunConfig& cfg, Output& out)
{
    Loaded l = load(cfg);
    Geometry g = Geometry::build(std::move(l.arrangement));
    auto poincare = g.flats.poincare_oracle();
    out.emit("hyperplanes: " + std::to_string(g.arrangement.size()) + "; dimension: " + std::to_string(g.dimension()),
             Json{{"hyperplanes", g.arrangement.size()}, {"dimension", g.dimension()}});
    out.emit("flats: " + std::to_string(g.flats.size()) + "; faces: " + std::to_string(g.faces.size()),
             Json{{"flats", g.flats.size()}, {"faces", g.faces.size()}});
    out.emit("chambers: " + std::to_string(g.faces.chambers().size()) + "; poincare: " + poincare_string(poincare),
             Json{{"chambers", g.faces.chambers().size()}, {"poincare", poincare}});
    for (const auto& f : g.flats.flats())
        out.emit("  " + flat_label(f.support) + " codim " + std::to_string(f.codim) + " mobius " +
                     std::to_string(f.mobius),
                 Json{{"flat", index_list(f.support)}, {"codim", f.codim}, {"mobius", f.mobius}});
    return ok;
}

int cmd_betti(const RunConfig& cfg, Output& out)
{
    Pipeline p = build(cfg, out);
    auto b = p.betti();
    std::string text = "b =";
    for (auto x : b)
        text += " " + std::to_string(x);
    out.emit(text, Json{{"b", b}});
    return ok;
}

bool run_audit(const Pipeline& p, Output& out)
{
    const Geometry& g = p.geometry;
    const SalvettiComplex& s = p.complex;
    const EuclideanMatching& m = p.matching;
    bool ideals = audit_principal_ideals(g, m);

    bool classes = true;
    for (std::size_t i = 0; i < s.size(); ++i)
        classes = classes && n_class_by_flat(g, s, m.critical_flat, i) == m.n_class[i];

    bool fibers = true, visibility = true;
    for (const auto& [key, cells] : m.fibers) {
        fibers = fibers && fiber(g, s, m.critical_flat[key.chamber], key.chamber, key.opposite) == cells;
        if (key.opposite == g.faces.opposite(key.chamber, m.critical_face[key.chamber]))
            continue;
        if (g.flats[m.critical_flat[key.chamber]].space.dimension() == 0)
            continue;
        visibility = visibility && audit_fiber_visibility(g, s, m, key).same_faces;
    }

    bool paths = true;
    if (g.dimension() == 2) {
        TwistedComplex t = p.twisted();
        MorseComplex cf = LineMorseData(g, s, m, t).closed_form();
        for (std::size_t e : cf.cells1) {
            auto viapaths = alternating_path_sum(s, t, m, e);
            auto it = cf.d1.find({e, cf.cells0.front()});
            paths = paths && viapaths.size() == 1 && it != cf.d1.end() && viapaths.begin()->second == it->second;
        }
    }
    auto word = [](bool b) { return b ? "ok" : "FAILED"; };
    out.emit(std::string("audit: principal ideals ") + word(ideals) + "; n-classes " + word(classes) + "; fibers " +
                 word(fibers) + "; visibility " + word(visibility) + "; d1 paths " + word(paths),
             Json{{"audit",
                   {{"principal_ideals", ideals},
                    {"n_classes", classes},
                    {"fibers", fibers},
                    {"visibility", visibility},
                    {"d1_paths", paths}}}});
    return ideals && classes && fibers && visibility && paths;
}

int cmd_matching(const RunConfig& cfg, Output& out)
{
    Pipeline p = build(cfg, out);
    const Geometry& g = p.geometry;
    const SalvettiComplex& s = p.complex;
    const EuclideanMatching& m = p.matching;
    std::vector<MatchedPair> pairs = m.pairs;
    if (cfg.drop_pair) {
        if (*cfg.drop_pair >= pairs.size())
            throw InputError("--drop-pair index out of range");
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(*cfg.drop_pair));
    }
    for (const auto& pr : pairs) {
        const FiberKey& k = m.eta[pr.high];
        std::string fiber_text = "(C" + g.faces.label(k.chamber) + ",C" + g.faces.label(k.opposite) + ")";
        out.emit("PAIR " + s.label(pr.high) + " " + s.label(pr.low) + " fiber=" + fiber_text,
                 Json{{"pair", {s.label(pr.high), s.label(pr.low)}},
                      {"fiber", {"C" + g.faces.label(k.chamber), "C" + g.faces.label(k.opposite)}}});
    }
    for (std::size_t c : m.critical)
        out.emit("CRITICAL " + s.label(c) + " codim=" + std::to_string(s[c].dim),
                 Json{{"critical", s.label(c)}, {"codim", s[c].dim}});

    VerificationReport rep = verify_matching(s, m, pairs);
    out.emit("pairs: " + std::to_string(pairs.size()) + "; critical: " + std::to_string(m.critical.size()) +
                 "; alternating paths: " + std::to_string(rep.alternating_paths),
             Json{{"pairs", pairs.size()}, {"critical", m.critical.size()},
                  {"alternating_paths", rep.alternating_paths}});
    if (cfg.verify) {
        for (std::size_t i = 0; i < rep.passed.size(); ++i)
            out.emit("check " + std::to_string(i + 1) + " " + VerificationReport::names[i] + ": " +
                         (rep.passed[i] ? "pass" : "FAIL"),
                     Json{{"check", i + 1}, {"name", VerificationReport::names[i]}, {"pass", rep.passed[i]}});
        for (const auto& v : rep.violations)
            out.emit("  " + v, Json{{"violation", v}});
        out.emit(std::string("verification: ") + (rep.ok() ? "all checks passed" : "FAILED"),
                 Json{{"verification", rep.ok()}});
    }
    bool audited = !cfg.audit || run_audit(p, out);
    return rep.ok() && audited ? ok : verification_failure;
}

int cmd_brieskorn(const RunConfig& cfg, Output& out)
{
    Pipeline p = build(cfg, out);
    const Geometry& g = p.geometry;
    bool all = true;
    for (const auto& r : brieskorn_counts(g, p.matching)) {
        const Flat& f = g.flats[r.flat];
        all = all && r.ok();
        out.emit(flat_label(f.support) + " codim " + std::to_string(f.codim) + ": count " + std::to_string(r.count) +
                     ", |mu| " + std::to_string(r.mobius) + ", recursive " + std::to_string(r.recursive) +
                     (r.ok() ? "" : "  MISMATCH"),
                 Json{{"flat", index_list(f.support)},
                      {"codim", f.codim},
                      {"count", r.count},
                      {"mobius", r.mobius},
                      {"recursive", r.recursive},
                      {"ok", r.ok()}});
    }
    out.emit("flats: " + std::to_string(g.flats.size()) + "; " + (all ? "all counts agree" : "counts disagree"),
             Json{{"flats", g.flats.size()}, {"agree", all}});
    return all ? ok : verification_failure;
}

void emit_matrix(Output& out, const std::string& name, const SalvettiComplex& s, const LaurentMatrix& m,
                 std::size_t rows, std::size_t cols)
{
    out.emit(name + " (" + std::to_string(rows) + " x " + std::to_string(cols) + ", " + std::to_string(m.size()) +
                 " nonzero)",
             Json{{"matrix", name}, {"rows", rows}, {"columns", cols}, {"nonzero", m.size()}});
    for (const auto& [key, v] : m)
        out.emit("  " + s.label(key.first) + " -> " + s.label(key.second) + ": " + v.to_string(),
                 Json{{"matrix", name}, {"row", s.label(key.first)}, {"column", s.label(key.second)},
                      {"entry", v.to_string()}});
}

int cmd_local_homology(const RunConfig& cfg, Output& out)
{
    Loaded l = load(cfg);
    if (l.arrangement.dimension() != 2)
        throw UnsupportedDimension("local-homology needs an arrangement of lines in the plane, got dimension " +
                                   std::to_string(l.arrangement.dimension()));
    Pipeline p = build(cfg, out);
    VerificationReport rep = verify_matching(p.complex, p.matching);
    if (!rep.ok()) {
        for (const auto& v : rep.violations)
            out.emit("  " + v, Json{{"violation", v}});
        return verification_failure;
    }
    TwistedComplex t = p.twisted();
    MorseComplex mc = LineMorseData(p.geometry, p.complex, p.matching, t).closed_form();
    if (cfg.verify) {
        MorseComplex red = reduced_morse_complex(p.complex, p.matching, t);
        bool same = red.d1 == mc.d1 && red.d2 == mc.d2;
        out.emit(std::string("reduction check: ") + (same ? "closed form equals reduction" : "MISMATCH"),
                 Json{{"reduction_check", same}});
        if (!same)
            return verification_failure;
    }
    emit_matrix(out, "d1", p.complex, mc.d1, mc.cells1.size(), mc.cells0.size());
    emit_matrix(out, "d2", p.complex, mc.d2, mc.cells2.size(), mc.cells1.size());
    if (!cfg.specialize.empty()) {
        InvariantFactors inv = specialize_and_invariants(mc);
        const std::string& v = cfg.specialize;
        std::string text = "H1 =";
        Json factors = Json::array();
        for (const auto& f : inv.factors) {
            text += " Q[" + v + "±]/(" + f.to_string(v) + ") ⊕";
            factors.push_back(f.to_string(v));
        }
        text += " Q[" + v + "±]^" + std::to_string(inv.free_rank);
        out.emit(text, Json{{"factors", factors}, {"free_rank", inv.free_rank}});
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Salvetti complexes, Euclidean matchings and Morse homology of hyperplane arrangements"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool with_point) {
        sub->add_option("file", cfg.input, "Arrangement file")->required();
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"text", "json-lines"}))
            ->capture_default_str();
        if (!with_point)
            return;
        sub->add_option("--point", cfg.point, "Base point coordinates (rationals)")->expected(1, -1);
        sub->add_option("--seed-perturb", cfg.seed_perturb, "Attempts of the generic point search")
            ->capture_default_str();
        sub->add_flag("--verify", cfg.verify, "Print the verification report");
        sub->add_flag("--audit", cfg.audit, "Run the exhaustive characterization audits");
    };
    std::map<std::string, std::function<int(const RunConfig&, Output&)>> commands{
        {"info", cmd_info},
        {"betti", cmd_betti},
        {"matching", cmd_matching},
        {"brieskorn", cmd_brieskorn},
        {"local-homology", cmd_local_homology}};

    add_common(app.add_subcommand("info", "Counts, Mobius table and Poincare polynomial"), false);
    add_common(app.add_subcommand("betti", "Betti numbers from the critical cells"), true);
    CLI::App* matching = app.add_subcommand("matching", "Matched pairs, critical cells and verification");
    add_common(matching, true);
    matching->add_option("--drop-pair", cfg.drop_pair, "Remove the given pair before verifying (negative control)");
    add_common(app.add_subcommand("brieskorn", "Critical chambers per flat against |mu|"), true);
    CLI::App* local = app.add_subcommand("local-homology", "Morse boundaries with local coefficients, n = 2");
    add_common(local, true);
    local->add_option("--specialize", cfg.specialize, "Send every t_i to this variable and compute H1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_error;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    Output out(cfg.format == "json-lines");
    try {
        return commands.at(cfg.subcommand)(cfg, out);
    } catch (const ParseError& e) {
        std::cerr << cfg.input << ": " << e.what() << '\n';
        return parse_error;
    } catch (const InputError& e) {
        std::cerr << e.what() << '\n';
        return parse_error;
    } catch (const UnsupportedDimension& e) {
        std::cerr << e.what() << '\n';
        return unsupported_dimension;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
}
