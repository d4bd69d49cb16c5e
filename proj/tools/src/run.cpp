#include "dupin/export/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>

#include "dupin/export/mesh.hpp"

namespace dupin::io {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKernelTolerance = 1e-11;
constexpr double kBridgeTolerance = 1e-8;

const PointSphereComplex& standard_p()
{
    static const PointSphereComplex p = PointSphereComplex::standard();
    return p;
}

class Residuals {
public:
    void declare(const std::string& name, double threshold) { table_[name].threshold = threshold; }

    void add(const std::string& name, double value)
    {
        Entry& e = table_.at(name);
        e.max = std::max(e.max, value);
        e.sum += value;
        ++e.count;
    }

    bool pass() const
    {
        return std::all_of(table_.begin(), table_.end(), [](const auto& kv) { return kv.second.pass(); });
    }

    json to_json() const
    {
        json out = json::object();
        for (const auto& [name, e] : table_) {
            out[name] = {{"max", e.max},
                         {"mean", e.count > 0 ? e.sum / static_cast<double>(e.count) : 0.0},
                         {"count", e.count},
                         {"threshold", e.threshold},
                         {"pass", e.pass()}};
        }
        return out;
    }

private:
    struct Entry {
        double max = 0.0;
        double sum = 0.0;
        long count = 0;
        double threshold = 0.0;

        bool pass() const { return max <= threshold; }
    };

    std::map<std::string, Entry> table_;
};

// Relative fourth singular value of the normalized point lifts; zero iff all lie on one circle.
double circle_rank_residual(const std::vector<Vec6>& pts)
{
    if (pts.size() < 4)
        return 0.0;
    Eigen::MatrixXd m(6, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        m.col(static_cast<Eigen::Index>(i)) = pts[i].normalized();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    return s[3] / s[0];
}

double incidence(const Vec6& x, const Vec6& s)
{
    return std::abs(inner(x, s)) / (x.norm() * s.norm());
}

Basis image(const LinearSphereComplex& a, const Basis& b)
{
    Basis out(6, b.cols());
    for (Eigen::Index i = 0; i < b.cols(); ++i)
        out.col(i) = lie_inversion(a, Vec6(b.col(i)));
    return out;
}

DupinCyclide build_surface(const SurfaceInput& s)
{
    DupinCyclide d = s.torus ? cyclide_from_torus(s.spine, s.tube, s.allowSingular)
                             : cyclide_from_curvature_spheres(lift(s.spheres[0]), lift(s.spheres[1]),
                                                              lift(s.spheres[2]));
    if (s.transform) {
        const LinearSphereComplex a(*s.transform);
        d = DupinCyclide(image(a, d.d1()), image(a, d.d2()));
    }
    return d;
}

bool is_plain_torus(const SurfaceInput& s)
{
    return s.torus && !s.transform;
}

// Implicit torus residual relative to the tube radius squared.
double torus_residual(const Vec3& x, double spine, double tube)
{
    const double rho = std::hypot(x.x(), x.y()) - spine;
    return std::abs(rho * rho + x.z() * x.z() - tube * tube) / (tube * tube);
}

std::vector<Vec6> row_of(const SphereGrid& g, std::size_t i)
{
    return {g.points.begin() + static_cast<std::ptrdiff_t>(i * g.cols()),
            g.points.begin() + static_cast<std::ptrdiff_t>((i + 1) * g.cols())};
}

std::vector<Vec6> column_of(const SphereGrid& g, std::size_t j)
{
    std::vector<Vec6> out;
    for (std::size_t i = 0; i < g.rows(); ++i)
        out.push_back(g.at(i, j));
    return out;
}

std::vector<double> shifted(std::vector<double> v, double by)
{
    for (double& x : v)
        x += by;
    return v;
}

// Collects output files in the order they are written.
class Writer {
public:
    Writer(const SceneConfig& cfg, std::string dir, bool enabled) : cfg_(cfg), dir_(std::move(dir)), enabled_(enabled) {}

    void prepare() const
    {
        if (!enabled_)
            return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec || !std::filesystem::is_directory(dir_))
            throw IoError("cannot create output directory " + dir_);
    }

    void mesh(const QuadMesh& m, const std::string& stem)
    {
        if (!enabled_)
            return;
        if (cfg_.writeObj)
            emit(stem + ".obj", [&](const std::string& p) { export_mesh(m, MeshFormat::Obj, p); });
        if (cfg_.writeJson)
            emit(stem + ".mesh.json", [&](const std::string& p) { export_mesh(m, MeshFormat::Json, p); });
    }

    void lines(const Polylines& l, const std::string& stem)
    {
        if (!enabled_)
            return;
        if (cfg_.writeObj)
            emit(stem + ".obj", [&](const std::string& p) { export_polylines(l, MeshFormat::Obj, p); });
        if (cfg_.writeJson)
            emit(stem + ".lines.json", [&](const std::string& p) { export_polylines(l, MeshFormat::Json, p); });
    }

    std::string path(const std::string& file) const { return (std::filesystem::path(dir_) / file).string(); }
    const json& files() const { return files_; }

private:
    template <class F>
    void emit(const std::string& file, F&& write)
    {
        write(path(file));
        files_.push_back(file);
    }

    const SceneConfig& cfg_;
    std::string dir_;
    bool enabled_;
    json files_ = json::array();
};

struct Job {
    const SceneConfig& cfg;
    Writer& out;
    Residuals& res;
    json& meta;
};

void run_cyclide(Job& job)
{
    const SceneConfig& cfg = job.cfg;
    const Thresholds& th = cfg.thresholds;
    const PointSphereComplex& p = standard_p();
    const DupinCyclide d = build_surface(*cfg.surface);
    const CurvatureSphereFamily fam = curvature_family(d, cfg.evolve.family);
    const EvolutionMap e(fam, cfg.evolve.base, p);
    const Circle c0 = curvature_circle(fam, cfg.evolve.base, p);
    const SphereGrid grid = evolve_circle(e, c0, cfg.uSamples, shifted(uniform_parameters(cfg.tSamples), cfg.evolve.base));

    QuadMesh mesh = mesh_from_grid(grid, true, true);
    mesh.metadata.construction = "cyclide";
    mesh.metadata.family = cfg.evolve.family;
    job.out.mesh(mesh, cfg.name);

    job.res.declare("surface_incidence", th.incidence);
    job.res.declare("circle_fit_rows", th.circleFit);
    job.res.declare("circle_fit_columns", th.circleFit);
    job.res.declare("quer_incidence", th.incidence);
    job.res.declare("quer_orthogonality", th.incidence);
    for (const Vec6& x : grid.points)
        job.res.add("surface_incidence", on_surface_residual(d, x));
    if (is_plain_torus(*cfg.surface)) {
        job.res.declare("torus_implicit", th.incidence);
        for (const Vec6& x : grid.points) {
            if (!is_infinity(x))
                job.res.add("torus_implicit", torus_residual(point_of(x), cfg.surface->spine, cfg.surface->tube));
        }
    }
    for (std::size_t i = 0; i < grid.rows(); ++i)
        job.res.add("circle_fit_rows", circle_rank_residual(row_of(grid, i)));
    for (std::size_t j = 0; j < grid.cols(); ++j)
        job.res.add("circle_fit_columns", circle_rank_residual(column_of(grid, j)));
    for (double t : grid.t) {
        const auto [qp, qm] = quer_spheres(fam, t, p);
        const Circle c = curvature_circle(fam, t, p);
        for (const OrientedSphere& q : {qp, qm}) {
            job.res.add("quer_incidence", circle_on_sphere_residual(c, q.rep()));
            job.res.add("quer_orthogonality", std::abs(orthogonality_residual(q.rep(), fam.at(t), p)));
        }
    }
    job.meta["singularParameters"] = singular_parameters(fam, p);
    job.meta["skippedRows"] = grid.skipped;
    job.meta["droppedQuads"] = mesh.metadata.droppedQuads;
}

void run_lame(Job& job)
{
    const SceneConfig& cfg = job.cfg;
    const Thresholds& th = cfg.thresholds;
    const PointSphereComplex& p = standard_p();
    const DupinCyclide d = build_surface(*cfg.surface);
    const LinearSphereComplex a(cfg.lame.complex);
    const LameResult fam = lame_family(d, a, p, cfg.lame.members);
    const FamilyType type = fam.family.type();

    const std::vector<double> us = uniform_parameters(cfg.uSamples);
    const std::vector<double> vs = uniform_parameters(cfg.tSamples);
    const std::vector<double> nulls = fam.family.null_parameters();

    job.res.declare("surface_incidence", th.incidence);
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
        const LameMember& m = fam.members[k];
        SphereGrid g;
        g.u = us;
        g.t = vs;
        for (double v : vs)
            for (double u : us)
                g.points.push_back(fam.family.point(u, v, m.param));
        for (const Vec6& x : g.points)
            job.res.add("surface_incidence", on_surface_residual(m.cyclide, x));
        QuadMesh mesh = mesh_from_grid(g, true, true);
        mesh.metadata.construction = "lame";
        mesh.metadata.familyType = to_string(type);
        mesh.metadata.member = static_cast<int>(k);
        mesh.metadata.singularParameters = nulls;
        char stem[32];
        std::snprintf(stem, sizeof stem, "_member_%02zu", k);
        job.out.mesh(mesh, cfg.name + stem);
    }

    // Trajectories through a fixed set of (u, v), sampled across the member range.
    const int n = cfg.lame.trajectories;
    const auto [lo, hi] = std::minmax_element(cfg.lame.members.begin(), cfg.lame.members.end());
    const int samples = cfg.lame.trajectorySamples;
    const RibaucourPair pair = ribaucour_transform(d, a, p);
    std::vector<std::vector<Vec6>> lines;
    job.res.declare("trajectory_circle_fit", th.circleFit);
    job.res.declare("trajectory_incidence", th.incidence);
    job.res.declare("congruence_orthogonality", th.angle);
    for (int i = 0; i < n; ++i) {
        const double u = 2.0 * kPi * (i + 0.5) / n;
        const double v = 2.0 * kPi * ((3 * i) % n + 0.25) / n;
        const Circle c = congruence_circle(pair, u, v, p);
        std::vector<Vec6> line;
        for (int s = 0; s < samples; ++s) {
            const double beta = *lo + (*hi - *lo) * s / (samples - 1);
            if (!fam.family.is_null(beta))
                line.push_back(fam.family.point(u, v, beta));
        }
        job.res.add("trajectory_circle_fit", circle_rank_residual(line));
        lines.push_back(std::move(line));
        for (const LameMember& m : fam.members) {
            const Vec6 x = fam.family.point(u, v, m.param);
            job.res.add("trajectory_incidence", on_circle_residual(c, x));
            job.res.add("congruence_orthogonality",
                        std::abs(circle_sphere_angle(c, project_onto(m.cyclide.d1(), x), p) - kPi / 2));
        }
    }
    job.out.lines(polylines_from_points(lines), cfg.name + "_trajectories");

    // Consecutive members are related by a recovered inversion of span(a, p).
    job.res.declare("ribaucour_relation", th.relation);
    const CurvatureSphereFamily f1 = curvature_family(d, 1);
    for (std::size_t k = 0; k + 1 < fam.members.size(); ++k) {
        const double from = fam.members[k].param, to = fam.members[k + 1].param;
        const LinearSphereComplex c = connecting_complex(fam.family, from, to);
        const LinearSphereComplex bf(fam.family.direction(from)), bt(fam.family.direction(to));
        for (int s = 0; s < 8; ++s) {
            const Vec6 x = f1.at(2.0 * kPi * s / 8);
            job.res.add("ribaucour_relation",
                        projective_distance(lie_inversion(c, lie_inversion(bf, x)),
                                            flip_orientation(lie_inversion(bt, x), p)));
        }
    }

    job.res.declare("ribaucour_cyclide_constancy", th.relation);
    for (int direction : {1, 2}) {
        for (int s = 0; s < 4; ++s) {
            const double fixed = 2.0 * kPi * (s + 0.3) / 4;
            const DupinCyclide ref = ribaucour_cyclide(pair, direction, fixed, 0.0);
            for (double other : {1.1, 2.9, 4.4})
                job.res.add("ribaucour_cyclide_constancy",
                            subspace_distance(ref.d1(), ribaucour_cyclide(pair, direction, fixed, other).d1()));
        }
    }

    job.meta["familyType"] = to_string(type);
    job.meta["nullParameters"] = nulls;
    job.meta["skippedMembers"] = fam.skipped;
    json umbilic = json::array();
    for (const OrientedSphere& s : fam.umbilic) {
        const Vec6 r = normalized(s.rep());
        umbilic.push_back(std::vector<double>(r.data(), r.data() + 6));
    }
    job.meta["umbilic"] = umbilic;
    if (type == FamilyType::Type1) {
        const ParallelReport pr = parallel_check(fam, euclidean_space_form(p), p);
        job.meta["parallel"] = {{"supported", pr.supported}, {"reason", pr.reason}, {"meanOffsets", pr.meanOffsets}};
        if (pr.supported) {
            job.res.declare("parallel_collinearity", th.incidence);
            job.res.declare("parallel_normal_deviation", th.incidence);
            job.res.add("parallel_collinearity", pr.maxCollinearity);
            job.res.add("parallel_normal_deviation", pr.maxNormalDeviation);
        }
    }
}

void run_blend(Job& job)
{
    const SceneConfig& cfg = job.cfg;
    const Thresholds& th = cfg.thresholds;
    const PointSphereComplex& p = standard_p();
    const auto& c = cfg.blend.circle;
    const BlendSpec spec{lift(cfg.blend.s1), lift(cfg.blend.s2), circle_through_points(c[0], c[1], c[2], p)};
    BlendOptions opt;
    opt.plusBranch = cfg.blend.plusBranch;
    opt.uSamples = cfg.uSamples;
    opt.tSamples = cfg.tSamples;
    const BlendResult r = blend(spec, p, opt);

    QuadMesh mesh = mesh_from_grid(r.surface, true, false);
    mesh.metadata.construction = "blend";
    job.out.mesh(mesh, cfg.name);

    job.res.declare("contact", th.incidence);
    job.res.declare("boundary_circles", th.incidence);
    job.res.declare("surface_incidence", th.incidence);
    job.res.declare("circle_fit_rows", th.circleFit);
    for (const OrientedSphere& s : {spec.s1, spec.s2})
        job.res.add("contact", std::min(membership_residual(r.cyclide.d1(), s.rep()),
                                        membership_residual(r.cyclide.d2(), s.rep())));
    job.res.add("boundary_circles", circle_on_sphere_residual(spec.gamma1, spec.s1.rep()));
    job.res.add("boundary_circles", circle_on_sphere_residual(r.gamma2, spec.s2.rep()));
    for (const Vec6& x : r.surface.points)
        job.res.add("surface_incidence", on_surface_residual(r.cyclide, x));
    for (std::size_t i = 0; i < r.surface.rows(); ++i)
        job.res.add("circle_fit_rows", circle_rank_residual(row_of(r.surface, i)));
    if (r.pencilResidual >= 0.0) {
        job.res.declare("pencil_cross_check", th.incidence);
        job.res.add("pencil_cross_check", r.pencilResidual);
    }
    job.meta["pencil"] = r.pencil ? to_string(r.pencil->kind()) : "none";
}

void run_subdivide(Job& job)
{
    const SceneConfig& cfg = job.cfg;
    const Thresholds& th = cfg.thresholds;
    const PointSphereComplex& p = standard_p();
    const SubdivideInput& in = cfg.subdivide;
    const DupinCyclide d = build_surface(*cfg.surface);
    const CurvatureSphereFamily fam = curvature_family(d, in.family);
    const Subdivision sub = subdivide(d, curvature_sphere(fam, in.from), curvature_sphere(fam, in.to), in.depth, p,
                                      in.otherPatch);

    std::vector<std::vector<Vec6>> lines;
    const std::vector<double> us = uniform_parameters(cfg.uSamples);
    job.res.declare("circle_on_surface", th.incidence);
    job.res.declare("circle_on_sphere", th.incidence);
    for (std::size_t k = 0; k < sub.circles.size(); ++k) {
        std::vector<Vec6> line;
        for (double u : us)
            line.push_back(sub.circles[k].point(u));
        for (const Vec6& x : line)
            job.res.add("circle_on_surface", on_surface_residual(d, x));
        line.push_back(line.front());
        lines.push_back(std::move(line));
        job.res.add("circle_on_sphere", circle_on_sphere_residual(sub.circles[k], fam.at(sub.params[k])));
    }
    job.out.lines(polylines_from_points(lines), cfg.name + "_circles");

    job.res.declare("monotone", th.selfSimilarity);
    job.res.declare("self_similarity", th.selfSimilarity);
    const double dir = in.otherPatch ? -1.0 : 1.0;
    for (std::size_t k = 1; k < sub.params.size(); ++k)
        job.res.add("monotone", std::max(0.0, -dir * (sub.params[k] - sub.params[k - 1])));
    for (std::size_t k = 0; k + 2 < sub.params.size(); ++k) {
        const Vec6 x = fam.at(sub.params[k]), m = fam.at(sub.params[k + 1]), y = fam.at(sub.params[k + 2]);
        const Vec6 a = inner(y, p.rep()) * x - inner(x, p.rep()) * y;
        if (k % 2 == 0)
            job.res.add("self_similarity", incidence(m, a));
        job.res.add("self_similarity", projective_distance(lie_inversion(LinearSphereComplex(a), x), y));
    }
    job.meta["parameters"] = sub.params;
    job.meta["family"] = sub.family;
}

void run_cube(Job& job)
{
    const SceneConfig& cfg = job.cfg;
    const Thresholds& th = cfg.thresholds;
    const PointSphereComplex& p = standard_p();
    const LameFamily fam(build_surface(*cfg.surface), LinearSphereComplex(cfg.cube.complex), p);
    const int n = cfg.cube.faceSamples;
    const CyclidicCube cube = cyclidic_cube(fam, cfg.cube.box, p, n);

    std::vector<double> local(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        local[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    QuadMesh mesh;
    mesh.metadata.construction = "cube";
    mesh.metadata.familyType = to_string(fam.type());
    for (const CubeFace& f : cube.faces)
        append(mesh, mesh_from_patch(f.patch, n, n, local, local));
    job.out.mesh(mesh, cfg.name + "_cube");

    job.res.declare("face_concircularity", th.rank);
    job.res.declare("edge_orthogonality", th.angle);
    for (double r : cube.faceRatios)
        job.res.add("face_concircularity", r);
    for (double a : cube.edgeAngles)
        job.res.add("edge_orthogonality", std::abs(a - kPi / 2));
    job.meta["familyType"] = to_string(fam.type());
}

void run_net(Job& job)
{
    const SceneConfig& cfg = job.cfg;
    const Thresholds& th = cfg.thresholds;
    const PointSphereComplex& p = standard_p();
    const DupinCyclide d = build_surface(*cfg.surface);
    const EvolveInput& ev = cfg.net.evolve;
    const CurvatureSphereFamily fam = curvature_family(d, ev.family);
    const EvolutionMap e(fam, ev.base, p);
    const Circle c = curvature_circle(fam, ev.base, p);

    SphereGrid g;
    g.u = uniform_parameters(cfg.uSamples);
    std::vector<Vec6> c0;
    for (double u : g.u)
        c0.push_back(c.point(u));
    std::vector<double> params = cfg.net.parameters;
    if (params.empty()) {
        const std::vector<double> roots = singular_parameters(fam, p);
        for (int k = 1; k < cfg.tSamples; ++k) {
            const double t = ev.base + 2.0 * kPi * k / cfg.tSamples;
            const bool singular = std::any_of(roots.begin(), roots.end(), [&](double r) {
                return std::abs(std::remainder(t - r, 2.0 * kPi)) < kSingularGap;
            });
            (singular ? g.skipped : params).push_back(t);
        }
    }
    std::vector<LinearSphereComplex> inversions;
    for (double t : params)
        inversions.push_back(e.complex(t));
    const DiscreteNet net = discrete_net(c0, inversions, p);

    g.t.push_back(ev.base);
    g.t.insert(g.t.end(), params.begin(), params.end());
    g.points = net.vertices;
    const bool closeT = cfg.net.parameters.empty();
    QuadMesh mesh = mesh_from_grid(g, true, closeT);
    mesh.metadata.construction = "net";
    mesh.metadata.family = ev.family;
    job.out.mesh(mesh, cfg.name);

    job.res.declare("quad_concircularity", th.rank);
    job.res.declare("surface_incidence", th.incidence);
    for (const auto& q : mesh.quads) {
        std::array<Vec6, 4> quad;
        for (int k = 0; k < 4; ++k)
            quad[static_cast<std::size_t>(k)] = net.vertices[static_cast<std::size_t>(q[static_cast<std::size_t>(k)])];
        job.res.add("quad_concircularity", concircularity(quad));
    }
    for (const Vec6& x : net.vertices)
        job.res.add("surface_incidence", on_surface_residual(d, x));
    job.meta["dims"] = net.dims;
    job.meta["skippedRows"] = g.skipped;
}

json error_report(const char* type, int code, const std::string& message, const std::string& detail)
{
    return {{"status", "error"}, {"exitCode", code}, {"error", {{"type", type}, {"code", detail}, {"message", message}}}};
}

std::string error_name(const Error& e)
{
    return to_string(e.code());
}

void try_write_report(const std::string& dir, const json& report)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        return;
    try {
        write_text((std::filesystem::path(dir) / "report.json").string(), report.dump(2) + '\n');
    } catch (const IoError&) {
    }
}

json construction_residuals(const SceneConfig& cfg, Writer& writer, json& meta, bool& pass)
{
    Residuals res;
    Job job{cfg, writer, res, meta};
    switch (cfg.kind) {
    case Construction::Cyclide: run_cyclide(job); break;
    case Construction::Lame: run_lame(job); break;
    case Construction::Blend: run_blend(job); break;
    case Construction::Subdivide: run_subdivide(job); break;
    case Construction::Cube: run_cube(job); break;
    case Construction::Net: run_net(job); break;
    }
    pass = res.pass();
    return res.to_json();
}

SceneConfig with_overrides(SceneConfig cfg, const RunOptions& options)
{
    if (options.outDir)
        cfg.outputDirectory = *options.outDir;
    if (options.samples) {
        cfg.uSamples = options.samples->first;
        cfg.tSamples = options.samples->second;
    }
    return cfg;
}

} // namespace

RunResult run(const SceneConfig& config, const RunOptions& options)
{
    const SceneConfig cfg = with_overrides(config, options);
    Writer writer(cfg, cfg.outputDirectory, options.writeMeshes);
    RunResult result;
    try {
        writer.prepare();
        json meta = json::object();
        bool pass = true;
        json residuals = construction_residuals(cfg, writer, meta, pass);
        result.report = {{"status", "ok"},
                         {"exitCode", kExitOk},
                         {"kind", to_string(cfg.kind)},
                         {"name", cfg.name},
                         {"samples", {{"u", cfg.uSamples}, {"t", cfg.tSamples}}},
                         {"residuals", residuals},
                         {"pass", pass},
                         {"metadata", meta},
                         {"outputs", writer.files()}};
        if (options.writeMeshes)
            write_text(writer.path("report.json"), result.report.dump(2) + '\n');
    } catch (const Error& e) {
        result.exitCode = kExitGeometry;
        result.message = std::string("geometric precondition failed: ") + e.what();
        result.report = error_report("geometry", kExitGeometry, e.what(), error_name(e));
        if (options.writeMeshes)
            try_write_report(cfg.outputDirectory, result.report);
    } catch (const IoError& e) {
        result.exitCode = kExitIo;
        result.message = std::string("io error: ") + e.what();
        result.report = error_report("io", kExitIo, e.what(), "IoError");
    }
    return result;
}

RunResult run_file(const std::string& configPath, std::optional<Construction> verb, const RunOptions& options)
{
    try {
        return run(parse_config(read_json_file(configPath), verb), options);
    } catch (const ConfigError& e) {
        RunResult r;
        r.exitCode = kExitConfig;
        r.message = std::string("config error at ") + e.what();
        r.report = error_report("config", kExitConfig, e.what(), e.pointer());
        return r;
    } catch (const IoError& e) {
        RunResult r;
        r.exitCode = kExitIo;
        r.message = std::string("io error: ") + e.what();
        r.report = error_report("io", kExitIo, e.what(), "IoError");
        return r;
    }
}

namespace {

Vec6 random_vec(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Vec6 v;
    for (int i = 0; i < 6; ++i)
        v[i] = d(gen);
    return v;
}

// Random complex kept away from the light cone.
Vec6 random_complex(std::mt19937_64& gen)
{
    Vec6 a;
    do {
        a = random_vec(gen);
    } while (std::abs(inner(a, a)) < 0.05 * a.squaredNorm());
    return a;
}

void kernel_suite(Residuals& res, std::mt19937_64& gen, int cases)
{
    const PointSphereComplex& p = standard_p();
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (const char* name : {"kernel_involution", "kernel_isometry", "kernel_light_cone", "kernel_p_fixing"})
        res.declare(name, kKernelTolerance);
    for (int i = 0; i < cases; ++i) {
        const LinearSphereComplex a(random_complex(gen));
        const Vec6 x = random_vec(gen), y = random_vec(gen);
        res.add("kernel_involution", (lie_inversion(a, lie_inversion(a, x)) - x).norm() / x.norm());
        res.add("kernel_isometry",
                std::abs(inner(lie_inversion(a, x), lie_inversion(a, y)) - inner(x, y)) / (x.norm() * y.norm()));
        const Vec3 c(unit(gen), unit(gen), unit(gen));
        const Vec6 s = lift(EuclidSphere::sphere(c, 0.1 + std::abs(unit(gen)))).rep();
        res.add("kernel_light_cone", light_residual(lie_inversion(a, s)));
        Vec6 m = a.rep();
        m[5] = 0.0;
        if (std::abs(inner(m, m)) > 0.05 * m.squaredNorm())
            res.add("kernel_p_fixing", (lie_inversion(LinearSphereComplex(m), p.rep()) - p.rep()).norm());
    }
}

void bridge_suite(Residuals& res, std::mt19937_64& gen, int cases)
{
    const PointSphereComplex& p = standard_p();
    std::uniform_real_distribution<double> unit(-1.0, 1.0), rad(0.2, 2.0);
    for (const char* name : {"bridge_round_trip", "bridge_angle", "bridge_point_incidence"})
        res.declare(name, kBridgeTolerance);
    for (int i = 0; i < cases; ++i) {
        const Vec3 c1(unit(gen), unit(gen), unit(gen)), c2(unit(gen), unit(gen), unit(gen));
        const double r1 = rad(gen), r2 = rad(gen);
        const EuclidSphere back = project(lift(EuclidSphere::sphere(c1, r1)).rep());
        res.add("bridge_round_trip", ((back.center() - c1).norm() + std::abs(back.radius() - r1)) / (1.0 + r1));
        const double dist = (c1 - c2).norm();
        if (dist < r1 + r2 - 0.05 && dist > std::abs(r1 - r2) + 0.05) {
            const double cosine = (r1 * r1 + r2 * r2 - dist * dist) / (2.0 * r1 * r2);
            const double got = angle(lift(EuclidSphere::sphere(c1, r1)), lift(EuclidSphere::sphere(c2, r2)), p);
            res.add("bridge_angle", std::abs(got - std::acos(cosine)));
        }
        const Vec3 dir = Vec3(unit(gen), unit(gen), unit(gen)).normalized();
        const Vec3 x = c1 + r1 * dir;
        res.add("bridge_point_incidence",
                incidence(lift_point(x).rep(), lift(EuclidSphere::sphere(c1, r1)).rep()));
    }
}

} // namespace

RunResult run_check(const std::optional<std::string>& configPath, const RunOptions& options, int cases)
{
    RunResult result;
    Residuals res;
    std::mt19937_64 gen(options.seed);
    kernel_suite(res, gen, cases);
    bridge_suite(res, gen, cases);
    bool pass = res.pass();
    result.report = {{"status", "ok"},
                     {"kind", "check"},
                     {"seed", options.seed},
                     {"cases", cases},
                     {"residuals", res.to_json()}};

    if (configPath) {
        RunOptions inner = options;
        inner.writeMeshes = false;
        RunResult sub = run_file(*configPath, std::nullopt, inner);
        if (sub.exitCode != kExitOk)
            return sub;
        result.report["construction"] = sub.report;
        pass = pass && sub.report.at("pass").get<bool>();
    }
    result.report["pass"] = pass;
    result.exitCode = pass ? kExitOk : kExitResidual;
    result.report["exitCode"] = result.exitCode;
    if (!pass)
        result.message = "residuals above threshold";

    const std::string dir = options.outDir.value_or(".");
    try {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        write_text((std::filesystem::path(dir) / "report.json").string(), result.report.dump(2) + '\n');
    } catch (const IoError& e) {
        result.exitCode = kExitIo;
        result.message = std::string("io error: ") + e.what();
    }
    return result;
}

std::optional<std::pair<int, int>> parse_samples(const std::string& text)
{
    const auto x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 == text.size())
        return std::nullopt;
    auto parse = [](const std::string& s) -> std::optional<int> {
        if (s.size() > 5 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            return std::nullopt;
        return std::stoi(s);
    };
    const auto u = parse(text.substr(0, x));
    const auto t = parse(text.substr(x + 1));
    if (!u || !t || *u < 3 || *t < 2)
        return std::nullopt;
    return std::make_pair(*u, *t);
}

} // namespace dupin::io
