#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "roampath/camera.hpp"
#include "roampath/geo.hpp"
#include "roampath/point.hpp"
#include "roampath/random.hpp"
#include "roampath/spline.hpp"

namespace roampath {

struct Obstacle {
    Point3 center;
    double radius = 1.0;
};

struct Target {
    std::string id;
    Point3 center;
    double radius = 1.0;
};

/// Five-minute session limit.
inline constexpr double kDefaultEnergyBudget = 300.0;

struct SceneSpec {
    std::vector<Obstacle> obstacles;
    std::vector<Target> targets;
    double agent_radius = 0.0;
    double energy_budget = kDefaultEnergyBudget;  // seconds
};

/// Radii > 0, agent_radius >= 0, energy_budget > 0, finite centers.
void validate(const SceneSpec& scene);

/// Reads `{"obstacles":[{"center":[x,y,z],"radius":r}], "targets":[{"id":..,
/// "center":[..],"radius":r}], "agent_radius":r, "energy_budget":s}`.
/// Missing arrays are empty; energy_budget defaults to 300 s.
SceneSpec parse_scene_json(std::string_view text);
SceneSpec load_scene_file(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const SceneSpec& scene);

/// Per-keypoint speeds, linear in the global curve parameter between knots.
class SpeedProfile {
public:
    explicit SpeedProfile(std::vector<double> speeds);
    static SpeedProfile from_keypoints(std::span<const KeyPoint> kps);
    static SpeedProfile constant(double speed, std::size_t keypoints);

    double at(double s) const;
    std::size_t size() const noexcept { return speeds_.size(); }
    std::span<const double> speeds() const noexcept { return speeds_; }

private:
    std::vector<double> speeds_;
};

struct SimResult {
    double time_used = 0.0;  // seconds
    std::size_t collisions = 0;
    std::size_t ray_attempts = 0;
    std::size_t ray_hits = 0;
    double accuracy = 0.0;  // ray_hits / ray_attempts, 0 with no attempts
    bool completed = false;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

nlohmann::ordered_json to_json(const SimResult& result);

struct RayHit {
    std::size_t target;  // index into SceneSpec::targets
    std::string id;
    double distance;  // along the normalized ray
};

/// Nearest target sphere hit by the ray. Grazing rays (distance from the
/// center equal to the radius) count as hits. Throws Errc::invalid_input on a
/// zero or non-finite direction.
std::optional<RayHit> cast_ray(const Point3& origin, const Point3& direction,
                               const SceneSpec& scene);

/// Rotates a unit direction by a random angular error. The error is a 2-D
/// isotropic Gaussian with per-axis deviation sigma (radians) in the plane
/// orthogonal to the direction. An infinite sigma draws uniformly on the sphere.
Point3 perturb_direction(const Point3& direction, double sigma, Rng& rng);

struct RayTaskOptions {
    double sigma = 0.0;  // radians
    std::uint64_t seed = 0;
    /// Distance beyond a target's surface at which an attempt is triggered.
    /// Defaults to twice the target radius.
    std::optional<double> trigger_distance;
};

struct RayTaskResult {
    std::size_t attempts = 0;
    std::size_t hits = 0;

    double accuracy() const noexcept {
        return attempts == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(attempts);
    }
    friend bool operator==(const RayTaskResult&, const RayTaskResult&) = default;
};

/// Online ray-selection model. Each time the agent enters a target's trigger
/// zone one ray is fired at the nearest target center, perturbed by aim
/// noise; it scores when the first sphere it meets is that target.
class RayTask {
public:
    RayTask(const SceneSpec& scene, const RayTaskOptions& options);

    void observe(const Point3& agent);
    const RayTaskResult& result() const noexcept { return result_; }

private:
    const SceneSpec* scene_;
    double sigma_;
    std::vector<double> zone_radius_;
    std::vector<bool> inside_;
    Rng rng_;
    RayTaskResult result_;
};

RayTaskResult run_ray_task(std::span<const Point3> trajectory, const SceneSpec& scene,
                           const RayTaskOptions& options);

/// Moves an agent along the curve with a fixed timestep, covering
/// speed(s) * dt of arc length per step, until s reaches 1 or the energy
/// budget runs out. A collision is one entry into an obstacle (agent and
/// obstacle spheres overlapping, touching included); starting inside counts
/// as an entry.
SimResult traverse(const PathCurve& curve, const SpeedProfile& profile, const SceneSpec& scene,
                   double dt, const std::optional<RayTaskOptions>& rays = std::nullopt);

/// Time-sampled positions and view directions.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> params;
    std::vector<Point3> positions;
    std::vector<Point3> views;
};

Trajectory sample_trajectory(const PathCurve& curve, const SpeedProfile& profile,
                             ViewModel model, double dt, double time_limit);

}  // namespace roampath
