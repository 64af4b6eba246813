#ifndef ROTCLUS_ANGLE_HPP
#define ROTCLUS_ANGLE_HPP

#include <cmath>
#include <numbers>

namespace rotclus {

// Rotation angle in degrees, kept normalized to [0, 360).
class Angle {
public:
    Angle() = default;

    explicit Angle(double degrees) : degrees_(normalize(degrees)) {}

    double degrees() const { return degrees_; }

    double radians() const { return degrees_ * std::numbers::pi / 180.0; }

    static double normalize(double degrees) {
        if (degrees >= 0.0 && degrees < 360.0)
            return degrees + 0.0; // canonicalize -0.0
        double d = std::fmod(degrees, 360.0);
        if (d < 0.0)
            d += 360.0;
        // fmod of a tiny negative value can round up to exactly 360 here.
        if (d >= 360.0)
            d = 0.0;
        return d;
    }

private:
    double degrees_ = 0.0;
};

inline Angle operator+(Angle a, Angle b) {
    return Angle(a.degrees() + b.degrees());
}

// Shortest circular separation between two angles, in degrees.
inline double circular_distance(Angle a, Angle b) {
    double d = std::fabs(a.degrees() - b.degrees());
    return d > 180.0 ? 360.0 - d : d;
}

} // namespace rotclus

#endif
