#pragma once

#include <vector>

#include "coex/config.hpp"
#include "coex/rng.hpp"

namespace coex {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline bool operator==(Point2D a, Point2D b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2D a, Point2D b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2D a) { return std::hypot(a.x, a.y); }
inline double distance(Point2D a, Point2D b) { return norm(a - b); }

struct RegionSpec {
  Point2D center;          // relative to the radar at the origin
  double radius_region = 0.0;
  double radius_network = 0.0;
};

// One Monte Carlo snapshot: AP positions and, per AP, its station positions.
struct DropLayout {
  std::vector<Point2D> ap_positions;
  std::vector<std::vector<Point2D>> sta_positions;
  RegionSpec region;
};

struct RadarState {
  Point2D origin{0.0, 0.0};
  double rpm = 15.0;
  double boresight_angle = 0.0;  // radians in [0, 2pi)
};

// angle wrapped into [0, 2pi)
double wrap_two_pi(double angle);

// shortest separation between two angles, in [0, pi]
double angular_distance(double a, double b);

// angle between two vectors, in [0, pi]; throws on a zero-length vector
double angle_between(Point2D u, Point2D v);

Point2D uniform_in_disc(Point2D center, double radius, Rng& rng);

// APs uniform over the region disc centered at (d, 0); stations uniform over
// each AP's network disc. Counts are exactly lambda_ap / lambda_sta unless
// config.poisson_counts draws them Poisson. Stations landing exactly on their
// AP are resampled so every link has a direction.
DropLayout sample_drop(const SimConfig& config, Rng& rng);

// boresight azimuth after t seconds of rotation from azimuth zero
double boresight_at(const RadarState& radar, double t);

// angle at tx between its beam direction and the direction to the radar
double off_axis_wifi(Point2D tx, Point2D beam_target, Point2D radar_origin);

// angle between the radar boresight and the direction to the node
double off_axis_radar(Point2D node, const RadarState& radar);

}  // namespace coex
