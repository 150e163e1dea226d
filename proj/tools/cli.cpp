#include "cli.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ballpoly/ball_polyhedron.hpp"
#include "ballpoly/classification.hpp"
#include "ballpoly/mesh.hpp"
#include "ballpoly/rigidity.hpp"
#include "json.hpp"

namespace ballpoly::cli {

using json = nlohmann::json;

ExitCode exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidArgument:
            return Parse;
        case ErrorKind::CollinearCenters:
        case ErrorKind::CoplanarPoints:
        case ErrorKind::DegenerateInput:
        case ErrorKind::DuplicateCenters:
        case ErrorKind::DegenerateTies:
        case ErrorKind::CoplanarInput:
        case ErrorKind::AmbiguousCosphericity:
        case ErrorKind::EmptyIntersection:
        case ErrorKind::EmptyInterior:
        case ErrorKind::NotReduced:
        case ErrorKind::DegenerateVertex:
        case ErrorKind::CoplanarCenters:
            return Degenerate;
        case ErrorKind::OutOfRange:
        case ErrorKind::TooFewVertices:
        case ErrorKind::NotStandard:
        case ErrorKind::NotNormal:
        case ErrorKind::PreconditionFailed:
        case ErrorKind::SideLengthMismatch:
        case ErrorKind::NotConvex:
        case ErrorKind::NotHemispherical:
        case ErrorKind::NotSimple:
        case ErrorKind::NotPlane:
            return Precondition;
        case ErrorKind::NotCongruent:
        case ErrorKind::DisagreementBug:
        case ErrorKind::GeneratorExhausted:
            return Negative;
    }
    return Negative;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double finite_number(const json& v, const std::string& where) {
    if (!v.is_number()) parse_fail(where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) parse_fail(where + " must be finite");
    return x;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) parse_fail("instance must be a JSON object");
    if (!doc.contains("version") || doc["version"] != kInstanceVersion)
        parse_fail(std::string("version must be \"") + kInstanceVersion + "\"");
    Instance inst;
    double scale = 1.0;
    if (doc.contains("radius")) {
        scale = finite_number(doc["radius"], "radius");
        if (!(scale > 0.0)) parse_fail("radius must be positive");
        inst.radius = scale;
    }
    if (!doc.contains("centers") || !doc["centers"].is_array() || doc["centers"].empty())
        parse_fail("centers must be a non-empty array");
    for (std::size_t i = 0; i < doc["centers"].size(); ++i) {
        const json& c = doc["centers"][i];
        const std::string where = "centers[" + std::to_string(i) + "]";
        if (!c.is_array() || c.size() != 3) parse_fail(where + " must be [x, y, z]");
        inst.centers.push_back(Point3{finite_number(c[0], where), finite_number(c[1], where),
                                      finite_number(c[2], where)} /
                               scale);
    }
    if (doc.contains("labels")) {
        const json& l = doc["labels"];
        if (!l.is_array() || l.size() != inst.centers.size())
            parse_fail("labels must be an array with one string per center");
        for (const auto& s : l) {
            if (!s.is_string()) parse_fail("labels must be strings");
            inst.labels.push_back(s.get<std::string>());
        }
    }
    return inst;
}

std::string instance_json(const Instance& inst) {
    json doc;
    doc["version"] = kInstanceVersion;
    json cs = json::array();
    for (const auto& c : inst.centers) cs.push_back({c.x, c.y, c.z});
    doc["centers"] = cs;
    if (inst.radius) doc["radius"] = *inst.radius;
    if (!inst.labels.empty()) doc["labels"] = inst.labels;
    return doc.dump(2) + "\n";
}

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
        f << contents;
        f.flush();
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(ErrorKind::InvalidArgument, "cannot rename into " + path + ": " + ec.message());
    }
}

namespace {

struct Common {
    std::string output;
    bool reproducible = false;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) parse_fail("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Instance load(const std::string& path) { return parse_instance(read_file(path)); }

/// Digest of the normalized instance, so scaled copies share it.
std::string digest(const Instance& inst) {
    Instance unit = inst;
    unit.radius.reset();
    return "fnv1a64:" + fnv1a64(instance_json(unit));
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json report_header(const std::string& command, const Common& c) {
    json r;
    r["schema"] = kReportSchema;
    r["command"] = command;
    if (!c.reproducible) r["generated_at"] = utc_now();
    return r;
}

json point(const Point3& p) { return json::array({p.x, p.y, p.z}); }

const char* sign_text(Sign s) {
    switch (s) {
        case Sign::Plus:
            return "+";
        case Sign::Minus:
            return "-";
        default:
            return "0";
    }
}

json signs(const SignSequence& seq) {
    json a = json::array();
    for (Sign s : seq) a.push_back(sign_text(s));
    return a;
}

json isometry_json(const Isometry& g) {
    json rows = json::array();
    for (const auto& row : g.rotation.m) rows.push_back({row[0], row[1], row[2]});
    return {{"rotation", rows},
            {"translation", point(g.translation)},
            {"orientation", g.orientation == Orientation::Preserving ? "preserving" : "reversing"},
            {"rms_residual", g.rms_residual},
            {"max_residual", g.max_residual}};
}

struct Body {
    Instance instance;
    Reduction reduction;
    BallPolyhedron poly;
};

Body build_body(const Instance& inst, bool auto_reduce, const Tolerance& tol) {
    Body b{inst, reduce_family(inst.centers, tol), {}};
    if (!b.reduction.removed.empty() && !auto_reduce) {
        std::string ids;
        for (int i : b.reduction.removed) ids += (ids.empty() ? "" : ", ") + std::to_string(i);
        throw Error(ErrorKind::NotReduced, "balls " + ids + " contribute no face (use --auto-reduce to drop them)");
    }
    b.poly = build(b.reduction.family, tol);
    return b;
}

json body_json(const Body& b) {
    const BallPolyhedron& p = b.poly;
    json r;
    r["digest"] = digest(b.instance);
    r["counts"] = {{"f", p.faces.size()}, {"e", p.edges.size()}, {"v", p.vertices.size()}};
    r["reduction"] = {{"reduced", b.reduction.removed.empty()},
                      {"kept", b.reduction.kept},
                      {"removed", b.reduction.removed}};
    json faces = json::array();
    for (std::size_t k = 0; k < p.faces.size(); ++k) {
        json f{{"face", k},
               {"input_index", b.reduction.kept[k]},
               {"vertices", p.faces[k].vertices},
               {"edges", p.faces[k].edges},
               {"neighbors", p.faces[k].neighbors}};
        if (!b.instance.labels.empty()) f["label"] = b.instance.labels[b.reduction.kept[k]];
        faces.push_back(f);
    }
    r["faces"] = faces;
    json verts = json::array();
    for (const auto& v : p.vertices) verts.push_back({{"point", point(v.point)}, {"faces", v.faces}});
    r["vertices"] = verts;
    json edges = json::array();
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        const BpEdge& edge = p.edges[e];
        edges.push_back({{"edge", e},
                         {"faces", edge.faces},
                         {"kind", edge.kind == EdgeKind::Arc ? "arc" : "full_circle"},
                         {"from", edge.from},
                         {"to", edge.to},
                         {"dihedral", p.angles.dihedral[e]},
                         {"length", p.angles.edge_length[e]},
                         {"circle_radius", edge.circle_radius}});
    }
    r["edges"] = edges;
    json angles = json::array();
    for (const auto& [flag, beta] : p.angles.face_angle)
        angles.push_back({{"vertex", flag.first}, {"face", flag.second}, {"beta", beta}});
    r["face_angles"] = angles;
    const StandardCertificate cert = is_standard(p);
    r["standard"] = {{"standard", cert.standard}, {"reason", cert.reason}, {"pair", cert.pair}};
    r["simplicial"] = cert.standard && is_simplicial(p);
    return r;
}

json normality_json(const BallPolyhedron& p, const Tolerance& tol) {
    try {
        const NormalityReport n = is_normal(p, tol);
        json vs = json::array();
        for (const auto& v : n.vertices)
            vs.push_back({{"point", point(v.point)},
                          {"indices", v.indices},
                          {"rho", v.rho},
                          {"delta", v.delta},
                          {"margin", v.margin}});
        return {{"normal", n.normal},
                {"degenerate", n.degenerate},
                {"by_circumscribed_radius", n.by_circumscribed_radius},
                {"by_interior_vertices", n.by_interior_vertices},
                {"by_cell_vertices", n.by_cell_vertices},
                {"rho_max", n.rho_max},
                {"voronoi_vertices", vs}};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::CoplanarCenters) throw;
        return {{"normal", false}, {"error", e.what()}};
    }
}

json lc_json(const LegendreCauchyResult& r) {
    const char* v = r.verdict == LcVerdict::AllZero ? "all_zero"
                    : r.verdict == LcVerdict::SignChanges ? "sign_changes"
                                                          : "violation";
    return {{"verdict", v}, {"changes", r.changes}, {"differences", r.differences}, {"signs", signs(r.signs)}};
}

json sign_counting_json(const SignCountingReport& r) {
    return {{"consistent", r.consistent},
            {"violations", r.violations},
            {"changes", r.changes},
            {"all_zero", r.all_zero}};
}

json iso_json(const LatticeIso& iso) {
    return {{"vertex", iso.vertex}, {"edge", iso.edge}, {"face", iso.face}};
}

json problems_json(const std::vector<std::string>& p) { return json(p); }

void emit(const std::string& text, const Common& c, std::ostream& out) {
    if (c.output.empty()) out << text;
    else write_atomic(c.output, text);
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("BALLPOLY_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && end != s) return v;
        parse_fail("BALLPOLY_SEED must be a non-negative integer");
    }
    return 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ball-polyhedra: build, classify, compare and verify intersections of unit balls"};
    app.require_subcommand(1);
    Common common;
    Tolerance tol;
    bool auto_reduce = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", common.output, "Write to this file (atomically) instead of stdout");
        sub->add_flag("--reproducible", common.reproducible, "Omit the timestamp so output is byte-identical");
        sub->add_option("--eps-len", tol.eps_len, "Length tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--eps-ang", tol.eps_ang, "Angle tolerance")->check(CLI::PositiveNumber);
    };

    std::string in_a, in_b;
    auto* build_cmd = app.add_subcommand("build", "Build the ball-polyhedron and report its structure");
    build_cmd->add_option("input", in_a, "Instance file")->required();
    build_cmd->add_flag("--auto-reduce", auto_reduce, "Drop balls that contribute no face");
    add_common(build_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "Report standardness and normality");
    classify_cmd->add_option("input", in_a, "Instance file")->required();
    classify_cmd->add_flag("--auto-reduce", auto_reduce, "Drop balls that contribute no face");
    add_common(classify_cmd);

    auto* angles_cmd = app.add_subcommand("angles", "Report dihedral angles, edge lengths and face angles");
    angles_cmd->add_option("input", in_a, "Instance file")->required();
    angles_cmd->add_flag("--auto-reduce", auto_reduce, "Drop balls that contribute no face");
    add_common(angles_cmd);

    auto* compare_cmd = app.add_subcommand("compare", "Combinatorial equivalence and congruence of two instances");
    compare_cmd->add_option("a", in_a, "First instance")->required();
    compare_cmd->add_option("b", in_b, "Second instance")->required();
    compare_cmd->add_flag("--auto-reduce", auto_reduce, "Drop balls that contribute no face");
    add_common(compare_cmd);

    std::string theorem;
    RigidityOptions ropts;
    auto* verify_cmd = app.add_subcommand("verify", "Run a rigidity verification pipeline on two instances");
    verify_cmd->add_option("a", in_a, "First instance")->required();
    verify_cmd->add_option("b", in_b, "Second instance")->required();
    verify_cmd->add_option("--theorem", theorem, "stoker, alexandrov or normal-rigidity")
        ->required()
        ->check(CLI::IsMember({"stoker", "alexandrov", "normal-rigidity"}));
    verify_cmd->add_option("--equal", ropts.equal, "Tolerance for equal corresponding measurements")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--auto-reduce", auto_reduce, "Drop balls that contribute no face");
    add_common(verify_cmd);

    std::string kind;
    int n = 6;
    double edge = 1.0;
    std::optional<std::uint64_t> seed;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
    gen_cmd->add_option("--kind", kind, "normal, standard-not-normal or tetra")
        ->required()
        ->check(CLI::IsMember({"normal", "standard-not-normal", "tetra"}));
    gen_cmd->add_option("--n", n, "Number of balls for --kind normal")->check(CLI::Range(4, 1000));
    gen_cmd->add_option("--seed", seed, "Seed (default: BALLPOLY_SEED, else 1)");
    gen_cmd->add_option("--edge", edge, "Edge length for --kind tetra")->check(CLI::PositiveNumber);
    add_common(gen_cmd);

    int segments = 32;
    auto* obj_cmd = app.add_subcommand("export-obj", "Write the boundary as a triangle mesh in OBJ format");
    obj_cmd->add_option("input", in_a, "Instance file")->required();
    obj_cmd->add_option("--segments", segments, "Pieces per edge arc")->check(CLI::Range(1, 4096));
    obj_cmd->add_flag("--auto-reduce", auto_reduce, "Drop balls that contribute no face");
    add_common(obj_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Parse;
    }

    try {
        if (build_cmd->parsed() || classify_cmd->parsed()) {
            const Body b = build_body(load(in_a), auto_reduce, tol);
            json r = report_header(build_cmd->parsed() ? "build" : "classify", common);
            r.update(body_json(b));
            if (classify_cmd->parsed()) r["normality"] = normality_json(b.poly, tol);
            emit(r.dump(2) + "\n", common, out);
            return Ok;
        }
        if (angles_cmd->parsed()) {
            const json body = body_json(build_body(load(in_a), auto_reduce, tol));
            json r = report_header("angles", common);
            for (const char* key : {"digest", "counts", "face_angles"}) r[key] = body[key];
            json edges = json::array();
            for (const auto& e : body["edges"])
                edges.push_back({{"edge", e["edge"]}, {"faces", e["faces"]}, {"dihedral", e["dihedral"]}, {"length", e["length"]}});
            r["edges"] = edges;
            emit(r.dump(2) + "\n", common, out);
            return Ok;
        }
        if (compare_cmd->parsed()) {
            const Body a = build_body(load(in_a), auto_reduce, tol);
            const Body b = build_body(load(in_b), auto_reduce, tol);
            json r = report_header("compare", common);
            r["a"] = {{"digest", digest(a.instance)}, {"counts", body_json(a)["counts"]}};
            r["b"] = {{"digest", digest(b.instance)}, {"counts", body_json(b)["counts"]}};
            const auto iso = matching_equivalence(a.poly, b.poly, Match::DihedralAndLength, {tol, ropts.equal});
            r["combinatorially_equivalent"] = iso.has_value();
            bool same = false;
            if (iso) {
                r["isomorphism"] = iso_json(*iso);
                try {
                    r["isometry"] = isometry_json(congruent(a.poly, b.poly, *iso, tol));
                    same = true;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::NotCongruent) throw;
                    r["congruence_error"] = e.what();
                }
            }
            r["congruent"] = same;
            emit(r.dump(2) + "\n", common, out);
            return same ? Ok : Negative;
        }
        if (verify_cmd->parsed()) {
            ropts.tol = tol;
            const Body a = build_body(load(in_a), auto_reduce, tol);
            const Body b = build_body(load(in_b), auto_reduce, tol);
            const Match what = theorem == "stoker"       ? Match::DihedralAndLength
                               : theorem == "alexandrov" ? Match::FaceAngle
                                                         : Match::Dihedral;
            const auto iso = matching_equivalence(a.poly, b.poly, what, ropts);
            if (!iso) throw Error(ErrorKind::PreconditionFailed, "the instances are not combinatorially equivalent");
            json r = report_header("verify", common);
            r["theorem"] = theorem;
            r["a"] = {{"digest", digest(a.instance)}, {"counts", body_json(a)["counts"]}};
            r["b"] = {{"digest", digest(b.instance)}, {"counts", body_json(b)["counts"]}};
            r["isomorphism"] = iso_json(*iso);
            bool ok = false;
            if (theorem == "stoker") {
                const StokerReport s = verify_stoker(a.poly, b.poly, *iso, ropts);
                json av = json::array(), af = json::array(), flags = json::array();
                for (const auto& x : s.around_vertex) av.push_back(lc_json(x));
                for (const auto& x : s.around_face) af.push_back(lc_json(x));
                for (const auto& [j, k] : s.flags) flags.push_back({j, k});
                r["max_dihedral_difference"] = s.max_dihedral_difference;
                r["max_length_difference"] = s.max_length_difference;
                r["around_vertex"] = av;
                r["around_face"] = af;
                r["flags"] = flags;
                r["labels"] = signs(s.labels);
                r["sign_counting"] = sign_counting_json(s.sign_counting);
                r["max_face_angle_difference"] = s.max_face_angle_difference;
                r["face_angles_equal"] = s.face_angles_equal;
                if (s.congruent) r["isometry"] = isometry_json(s.isometry);
                r["congruent"] = s.congruent;
                r["problems"] = problems_json(s.problems);
                ok = s.ok();
            } else if (theorem == "alexandrov") {
                const AlexandrovReport s = verify_alexandrov(a.poly, b.poly, *iso, ropts);
                json av = json::array();
                for (const auto& x : s.around_vertex) av.push_back(lc_json(x));
                r["max_face_angle_difference"] = s.max_face_angle_difference;
                r["around_vertex"] = av;
                r["labels"] = signs(s.labels);
                r["sign_counting"] = sign_counting_json(s.sign_counting);
                r["max_dihedral_difference"] = s.max_dihedral_difference;
                r["dihedrals_equal"] = s.dihedrals_equal;
                r["problems"] = problems_json(s.problems);
                ok = s.ok();
            } else {
                const NormalRigidityReport s = verify_normal_global_rigidity(a.poly, b.poly, *iso, ropts);
                r["max_dihedral_difference"] = s.max_dihedral_difference;
                r["duality"] = {{"a_ok", s.duality_p.ok()}, {"b_ok", s.duality_q.ok()}};
                r["duality_ok"] = s.duality_ok;
                r["hull_edge_lengths"] = s.hull_edge_lengths;
                r["max_distance_from_dihedral"] = s.max_distance_from_dihedral;
                r["max_hull_edge_difference"] = s.max_hull_edge_difference;
                r["hull_edges_equal"] = s.hull_edges_equal;
                r["max_facet_residual"] = s.max_facet_residual;
                r["max_circumradius_difference"] = s.max_circumradius_difference;
                r["facets_congruent"] = s.facets_congruent;
                if (s.congruent) r["isometry"] = isometry_json(s.isometry);
                r["congruent"] = s.congruent;
                r["problems"] = problems_json(s.problems);
                ok = s.ok();
            }
            r["ok"] = ok;
            emit(r.dump(2) + "\n", common, out);
            return ok ? Ok : Negative;
        }
        if (gen_cmd->parsed()) {
            const std::uint64_t s = seed ? *seed : default_seed();
            Instance inst;
            if (kind == "normal") inst.centers = gen_normal_random(n, s, tol).centers;
            else if (kind == "standard-not-normal") inst.centers = gen_standard_not_normal(s, tol).centers;
            else inst.centers = gen_regular_tetrahedron(edge).centers;
            emit(instance_json(inst), common, out);
            return Ok;
        }
        if (obj_cmd->parsed()) {
            const Body b = build_body(load(in_a), auto_reduce, tol);
            std::ostringstream os;
            os << "# ballpoly mesh " << digest(b.instance) << " segments " << segments << "\n";
            write_obj(os, tessellate(b.poly, segments));
            emit(os.str(), common, out);
            return Ok;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return Parse;
}

}  // namespace ballpoly::cli
