#include "roampath/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roampath/error.hpp"
#include "text_io.hpp"

namespace roampath {

void validate(const SceneSpec& scene) {
    for (const auto& o : scene.obstacles) {
        if (!is_finite(o.center) || !(o.radius > 0.0) || !std::isfinite(o.radius)) {
            throw Error(Errc::invalid_input, "obstacle needs a finite center and radius > 0");
        }
    }
    for (const auto& t : scene.targets) {
        if (!is_finite(t.center) || !(t.radius > 0.0) || !std::isfinite(t.radius)) {
            throw Error(Errc::invalid_input,
                        "target '" + t.id + "' needs a finite center and radius > 0");
        }
    }
    if (!(scene.agent_radius >= 0.0) || !std::isfinite(scene.agent_radius)) {
        throw Error(Errc::invalid_input, "agent_radius must be finite and >= 0");
    }
    if (!(scene.energy_budget > 0.0)) {
        throw Error(Errc::invalid_input, "energy_budget must be > 0");
    }
}

namespace {

using nlohmann::json;

Point3 read_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) {
        throw Error(Errc::parse, std::string(what) + " must be an array of 3 numbers");
    }
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw Error(Errc::parse, std::string(what) + " must be an array of 3 numbers");
        }
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double read_number(const json& obj, const char* key, double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw Error(Errc::parse, std::string(key) + " must be a number");
    return it->get<double>();
}

nlohmann::ordered_json point_json(const Point3& p) { return nlohmann::ordered_json::array({p.x, p.y, p.z}); }

}  // namespace

SceneSpec parse_scene_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse, std::string("scene JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::parse, "scene JSON must be an object");

    SceneSpec scene;
    if (const auto it = doc.find("obstacles"); it != doc.end()) {
        if (!it->is_array()) throw Error(Errc::parse, "obstacles must be an array");
        for (const auto& o : *it) {
            if (!o.is_object() || !o.contains("center") || !o.contains("radius")) {
                throw Error(Errc::parse, "each obstacle needs center and radius");
            }
            scene.obstacles.push_back({read_point(o["center"], "obstacle center"),
                                       read_number(o, "radius", 0.0)});
        }
    }
    if (const auto it = doc.find("targets"); it != doc.end()) {
        if (!it->is_array()) throw Error(Errc::parse, "targets must be an array");
        for (const auto& t : *it) {
            if (!t.is_object() || !t.contains("center") || !t.contains("radius")) {
                throw Error(Errc::parse, "each target needs center and radius");
            }
            std::string id;
            if (const auto idit = t.find("id"); idit != t.end()) {
                if (!idit->is_string()) throw Error(Errc::parse, "target id must be a string");
                id = idit->get<std::string>();
            } else {
                id = "target" + std::to_string(scene.targets.size());
            }
            scene.targets.push_back(
                {std::move(id), read_point(t["center"], "target center"),
                 read_number(t, "radius", 0.0)});
        }
    }
    scene.agent_radius = read_number(doc, "agent_radius", 0.0);
    scene.energy_budget = read_number(doc, "energy_budget", kDefaultEnergyBudget);
    validate(scene);
    return scene;
}

SceneSpec load_scene_file(const std::filesystem::path& path) {
    return parse_scene_json(detail::read_text_file(path));
}

nlohmann::ordered_json to_json(const SceneSpec& scene) {
    using ojson = nlohmann::ordered_json;
    ojson obstacles = ojson::array();
    for (const auto& o : scene.obstacles) {
        obstacles.push_back(ojson{{"center", point_json(o.center)}, {"radius", o.radius}});
    }
    ojson targets = ojson::array();
    for (const auto& t : scene.targets) {
        targets.push_back(ojson{{"id", t.id}, {"center", point_json(t.center)}, {"radius", t.radius}});
    }
    return ojson{{"obstacles", obstacles},
            {"targets", targets},
            {"agent_radius", scene.agent_radius},
            {"energy_budget", scene.energy_budget}};
}

SpeedProfile::SpeedProfile(std::vector<double> speeds) : speeds_(std::move(speeds)) {
    if (speeds_.size() < 2) {
        throw Error(Errc::path_too_short, "a speed profile needs at least 2 keypoints");
    }
    for (double v : speeds_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(Errc::invalid_input, "speeds must be finite and > 0");
        }
    }
}

SpeedProfile SpeedProfile::from_keypoints(std::span<const KeyPoint> kps) {
    std::vector<double> speeds;
    speeds.reserve(kps.size());
    for (const auto& kp : kps) speeds.push_back(kp.speed);
    return SpeedProfile(std::move(speeds));
}

SpeedProfile SpeedProfile::constant(double speed, std::size_t keypoints) {
    return SpeedProfile(std::vector<double>(keypoints, speed));
}

double SpeedProfile::at(double s) const {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(Errc::domain, "speed profile parameter must lie in [0, 1]");
    }
    const double x = s * static_cast<double>(speeds_.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(x), speeds_.size() - 2);
    const double w = x - static_cast<double>(i);
    return (1.0 - w) * speeds_[i] + w * speeds_[i + 1];
}

nlohmann::ordered_json to_json(const SimResult& r) {
    return nlohmann::ordered_json{{"time_used", r.time_used},   {"collisions", r.collisions},
            {"ray_attempts", r.ray_attempts}, {"ray_hits", r.ray_hits},
            {"accuracy", r.accuracy},     {"completed", r.completed}};
}

std::optional<RayHit> cast_ray(const Point3& origin, const Point3& direction,
                               const SceneSpec& scene) {
    const double len = norm(direction);
    if (!(len > 0.0) || !std::isfinite(len) || !is_finite(origin)) {
        throw Error(Errc::invalid_input, "ray needs a finite origin and nonzero direction");
    }
    const Point3 dir = direction / len;
    std::optional<RayHit> best;
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        const auto& t = scene.targets[i];
        const Point3 oc = t.center - origin;
        const double along = dot(oc, dir);
        const double center_dist2 = dot(oc, oc);
        const double r2 = t.radius * t.radius;
        const bool inside = center_dist2 <= r2;
        if (!inside && along < 0.0) continue;
        const double perp2 = center_dist2 - along * along;
        if (perp2 > r2) continue;
        const double half_chord = std::sqrt(std::max(0.0, r2 - perp2));
        const double hit = inside ? 0.0 : along - half_chord;
        if (!best || hit < best->distance) best = RayHit{i, t.id, hit};
    }
    return best;
}

Point3 perturb_direction(const Point3& direction, double sigma, Rng& rng) {
    const Point3 d = direction / norm(direction);
    if (std::isinf(sigma)) return rng.unit_vector();
    if (sigma == 0.0) return d;

    // Orthonormal basis (u, v) of the plane orthogonal to d.
    const Point3 helper = std::abs(d.x) < 0.9 ? Point3{1.0, 0.0, 0.0} : Point3{0.0, 1.0, 0.0};
    const Point3 u = cross(d, helper) / norm(cross(d, helper));
    const Point3 v = cross(d, u);

    const double e1 = sigma * rng.normal();
    const double e2 = sigma * rng.normal();
    const double theta = std::hypot(e1, e2);
    if (theta == 0.0) return d;
    const Point3 lateral = (e1 / theta) * u + (e2 / theta) * v;
    return std::cos(theta) * d + std::sin(theta) * lateral;
}

RayTask::RayTask(const SceneSpec& scene, const RayTaskOptions& options)
    : scene_(&scene), sigma_(options.sigma), rng_(options.seed) {
    if (scene.targets.empty()) {
        throw Error(Errc::invalid_input, "ray task needs at least one target");
    }
    if (!(options.sigma >= 0.0)) {
        throw Error(Errc::invalid_input, "aim sigma must be >= 0");
    }
    if (options.trigger_distance && !(*options.trigger_distance >= 0.0)) {
        throw Error(Errc::invalid_input, "trigger distance must be >= 0");
    }
    for (const auto& t : scene.targets) {
        zone_radius_.push_back(t.radius + options.trigger_distance.value_or(2.0 * t.radius));
    }
    inside_.assign(scene.targets.size(), false);
}

void RayTask::observe(const Point3& agent) {
    const auto& targets = scene_->targets;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const bool now = distance(agent, targets[i].center) <= zone_radius_[i];
        if (now && !inside_[i]) {
            std::size_t nearest = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < targets.size(); ++j) {
                const double dj = distance(agent, targets[j].center);
                if (dj < best) {
                    best = dj;
                    nearest = j;
                }
            }
            Point3 ideal = targets[nearest].center - agent;
            if (norm(ideal) == 0.0) ideal = {1.0, 0.0, 0.0};
            const Point3 shot = perturb_direction(ideal, sigma_, rng_);
            ++result_.attempts;
            const auto hit = cast_ray(agent, shot, *scene_);
            if (hit && hit->target == nearest) ++result_.hits;
        }
        inside_[i] = now;
    }
}

RayTaskResult run_ray_task(std::span<const Point3> trajectory, const SceneSpec& scene,
                           const RayTaskOptions& options) {
    RayTask task(scene, options);
    for (const auto& p : trajectory) task.observe(p);
    return task.result();
}

namespace {

void check_run_inputs(const PathCurve& curve, const SpeedProfile& profile, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(Errc::invalid_input, "dt must be finite and > 0");
    }
    if (profile.size() != curve.keypoint_count()) {
        throw Error(Errc::invalid_input, "speed profile has " + std::to_string(profile.size()) +
                                             " entries but the curve has " +
                                             std::to_string(curve.keypoint_count()) +
                                             " keypoints");
    }
}

class CollisionCounter {
public:
    explicit CollisionCounter(const SceneSpec& scene)
        : scene_(scene), inside_(scene.obstacles.size(), false) {}

    void observe(const Point3& agent) {
        for (std::size_t i = 0; i < scene_.obstacles.size(); ++i) {
            const auto& o = scene_.obstacles[i];
            const bool now = distance(agent, o.center) <= o.radius + scene_.agent_radius;
            if (now && !inside_[i]) ++count_;
            inside_[i] = now;
        }
    }
    std::size_t count() const noexcept { return count_; }

private:
    const SceneSpec& scene_;
    std::vector<bool> inside_;
    std::size_t count_ = 0;
};

}  // namespace

SimResult traverse(const PathCurve& curve, const SpeedProfile& profile, const SceneSpec& scene,
                   double dt, const std::optional<RayTaskOptions>& rays) {
    check_run_inputs(curve, profile, dt);
    validate(scene);

    CollisionCounter collisions(scene);
    std::optional<RayTask> ray_task;
    if (rays) ray_task.emplace(scene, *rays);

    double s = 0.0;
    double time = 0.0;
    Point3 pos = curve.eval(0.0);
    collisions.observe(pos);
    if (ray_task) ray_task->observe(pos);

    while (s < 1.0) {
        const double budget_left = scene.energy_budget - time;
        if (budget_left <= 0.0) break;
        const double step = std::min(dt, budget_left);
        const double speed = profile.at(s);
        const double wanted = speed * step;
        const Advance adv = advance_by_length(curve, s, wanted);
        time += adv.traveled < wanted ? step * (adv.traveled / wanted) : step;
        s = adv.s;
        pos = curve.eval(s);
        collisions.observe(pos);
        if (ray_task) ray_task->observe(pos);
    }

    SimResult result;
    result.time_used = std::min(time, scene.energy_budget);
    result.collisions = collisions.count();
    result.completed = s >= 1.0;
    if (ray_task) {
        result.ray_attempts = ray_task->result().attempts;
        result.ray_hits = ray_task->result().hits;
        result.accuracy = ray_task->result().accuracy();
    }
    return result;
}

Trajectory sample_trajectory(const PathCurve& curve, const SpeedProfile& profile,
                             ViewModel model, double dt, double time_limit) {
    check_run_inputs(curve, profile, dt);
    if (!(time_limit > 0.0)) throw Error(Errc::invalid_input, "time limit must be > 0");

    Trajectory out;
    double s = 0.0;
    double time = 0.0;
    const auto record = [&] {
        out.times.push_back(time);
        out.params.push_back(s);
        out.positions.push_back(curve.eval(s));
        out.views.push_back(view_direction(curve, model, s));
    };
    record();
    while (s < 1.0 && time < time_limit) {
        const double step = std::min(dt, time_limit - time);
        const double wanted = profile.at(s) * step;
        const Advance adv = advance_by_length(curve, s, wanted);
        time += adv.traveled < wanted ? step * (adv.traveled / wanted) : step;
        s = adv.s;
        record();
    }
    return out;
}

}  // namespace roampath
