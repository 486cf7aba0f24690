#include "roampath/geo.hpp"

#include <cmath>
#include <sstream>

#include "roampath/error.hpp"
#include "text_io.hpp"

namespace roampath {

void validate(const KeyPoint& kp) {
    if (!std::isfinite(kp.longitude) || !std::isfinite(kp.latitude) ||
        !std::isfinite(kp.height) || !std::isfinite(kp.speed)) {
        throw Error(Errc::invalid_input, "keypoint has a non-finite field");
    }
    if (kp.height < 0.0) {
        throw Error(Errc::invalid_input, "keypoint height must be >= 0");
    }
    if (kp.speed <= 0.0) {
        throw Error(Errc::invalid_input, "keypoint speed must be > 0");
    }
}

Projection Projection::scaled(double sx, double sy, double sz) {
    for (double s : {sx, sy, sz}) {
        if (!std::isfinite(s) || s <= 0.0) {
            throw Error(Errc::invalid_input, "projection scale factors must be finite and > 0");
        }
    }
    return Projection(Mode::scaled, sx, sy, sz);
}

Point3 project(const KeyPoint& kp, const Projection& proj) {
    validate(kp);
    if (proj.mode() == Projection::Mode::raw) {
        return {kp.longitude, kp.latitude, kp.height};
    }
    const Point3 s = proj.scale();
    return {kp.longitude * s.x, kp.latitude * s.y, kp.height * s.z};
}

std::vector<Point3> project_all(std::span<const KeyPoint> kps, const Projection& proj) {
    std::vector<Point3> out;
    out.reserve(kps.size());
    for (const auto& kp : kps) out.push_back(project(kp, proj));
    return out;
}

namespace {

constexpr const char* kColumns[] = {"longitude", "latitude", "height", "speed"};

std::string row_error(std::size_t row, std::string_view what) {
    std::ostringstream os;
    os << "keypoint CSV row " << row << ": " << what;
    return os.str();
}

}  // namespace

std::vector<KeyPoint> load_keypoints(std::string_view content) {
    const auto lines = detail::split_lines(content);
    if (lines.size() < 3) {
        throw Error(Errc::path_too_short, "a path needs at least 2 keypoints");
    }

    const auto header = detail::split_fields(lines.front().text);
    const bool has_speed = header.size() == 4;
    if (header.size() < 3 || header.size() > 4) {
        throw Error(Errc::parse, "keypoint CSV header must be longitude,latitude,height[,speed]");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != kColumns[i]) {
            throw Error(Errc::parse, "keypoint CSV header must be longitude,latitude,height[,speed]");
        }
    }

    std::vector<KeyPoint> out;
    out.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = detail::split_fields(lines[r].text);
        if (fields.size() != header.size()) {
            throw Error(Errc::parse, row_error(r, "expected " + std::to_string(header.size()) +
                                                      " fields, got " +
                                                      std::to_string(fields.size())));
        }
        double values[4] = {0.0, 0.0, 0.0, 1.0};
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto v = detail::parse_double(fields[c]);
            if (!v) {
                throw Error(Errc::parse, row_error(r, std::string("cannot parse ") + kColumns[c] +
                                                          " value '" + std::string(fields[c]) +
                                                          "'"));
            }
            values[c] = *v;
        }
        KeyPoint kp{values[0], values[1], values[2], has_speed ? values[3] : 1.0};
        try {
            validate(kp);
        } catch (const Error& e) {
            throw Error(Errc::parse, row_error(r, e.what()));
        }
        out.push_back(kp);
    }
    return out;
}

std::vector<KeyPoint> load_keypoints_file(const std::filesystem::path& path) {
    return load_keypoints(detail::read_text_file(path));
}

std::string serialize_keypoints(std::span<const KeyPoint> kps) {
    std::string out = "longitude,latitude,height,speed\n";
    for (const auto& kp : kps) {
        out += detail::format_roundtrip(kp.longitude);
        out += ',';
        out += detail::format_roundtrip(kp.latitude);
        out += ',';
        out += detail::format_roundtrip(kp.height);
        out += ',';
        out += detail::format_roundtrip(kp.speed);
        out += '\n';
    }
    return out;
}

}  // namespace roampath
