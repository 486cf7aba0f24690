#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roampath/point.hpp"

namespace roampath {

/// One path waypoint as entered by the scene author.
struct KeyPoint {
    double longitude = 0.0;  // degrees, no wrapping
    double latitude = 0.0;   // degrees
    double height = 0.0;     // length units, >= 0
    double speed = 1.0;      // length units per second, > 0

    friend bool operator==(const KeyPoint&, const KeyPoint&) = default;
};

/// Throws Errc::invalid_input when a field is non-finite or out of range.
void validate(const KeyPoint& kp);

/// Maps keypoint records into working space.
class Projection {
public:
    enum class Mode { raw, scaled };

    /// Identity on (longitude, latitude, height).
    static Projection raw() noexcept { return Projection(Mode::raw, 1.0, 1.0, 1.0); }
    /// Componentwise scaling; all factors must be finite and strictly positive.
    static Projection scaled(double sx, double sy, double sz);

    Mode mode() const noexcept { return mode_; }
    Point3 scale() const noexcept { return {sx_, sy_, sz_}; }

private:
    Projection(Mode mode, double sx, double sy, double sz) noexcept
        : mode_(mode), sx_(sx), sy_(sy), sz_(sz) {}

    Mode mode_;
    double sx_, sy_, sz_;
};

Point3 project(const KeyPoint& kp, const Projection& proj);
std::vector<Point3> project_all(std::span<const KeyPoint> kps, const Projection& proj);

/// Parses keypoint CSV content (`longitude,latitude,height[,speed]` header,
/// one keypoint per row). Missing speed defaults to 1.0. Data rows are
/// numbered from 1 in diagnostics.
std::vector<KeyPoint> load_keypoints(std::string_view content);
std::vector<KeyPoint> load_keypoints_file(const std::filesystem::path& path);

/// Writes the CSV schema read by load_keypoints. Always emits the speed column.
std::string serialize_keypoints(std::span<const KeyPoint> kps);

}  // namespace roampath
