#include "coex/geometry.hpp"

#include <stdexcept>

#include "coex/units.hpp"

namespace coex {

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a == kTwoPi) a = 0.0;
  return a;
}

double angular_distance(double a, double b) {
  double d = std::fabs(wrap_two_pi(a) - wrap_two_pi(b));
  return d > kPi ? kTwoPi - d : d;
}

double angle_between(Point2D u, Point2D v) {
  double nu = norm(u);
  double nv = norm(v);
  if (nu < 1e-12 || nv < 1e-12)
    throw std::invalid_argument("degenerate geometry: zero-length direction");
  double c = dot(u, v) / (nu * nv);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

Point2D uniform_in_disc(Point2D center, double radius, Rng& rng) {
  double r = radius * std::sqrt(rng.uniform());
  double a = kTwoPi * rng.uniform();
  return {center.x + r * std::cos(a), center.y + r * std::sin(a)};
}

DropLayout sample_drop(const SimConfig& config, Rng& rng) {
  if (config.d < config.r_reg)
    throw ConfigError("sample_drop: d must be at least r_reg");
  if (config.r_net <= 0.0 || config.r_reg <= 0.0 || config.r_net >= config.r_reg)
    throw ConfigError("sample_drop: need 0 < r_net < r_reg");

  DropLayout layout;
  layout.region = RegionSpec{{config.d, 0.0}, config.r_reg, config.r_net};

  int n_ap = config.poisson_counts
                 ? rng.poisson(static_cast<double>(config.lambda_ap))
                 : config.lambda_ap;
  layout.ap_positions.reserve(n_ap);
  layout.sta_positions.reserve(n_ap);
  for (int k = 0; k < n_ap; ++k) {
    Point2D ap = uniform_in_disc(layout.region.center, config.r_reg, rng);
    layout.ap_positions.push_back(ap);
    int n_sta = config.poisson_counts
                    ? rng.poisson(static_cast<double>(config.lambda_sta))
                    : config.lambda_sta;
    std::vector<Point2D> stas;
    stas.reserve(n_sta);
    for (int i = 0; i < n_sta; ++i) {
      Point2D sta = uniform_in_disc(ap, config.r_net, rng);
      while (sta == ap) sta = uniform_in_disc(ap, config.r_net, rng);
      stas.push_back(sta);
    }
    layout.sta_positions.push_back(std::move(stas));
  }
  return layout;
}

double boresight_at(const RadarState& radar, double t) {
  return wrap_two_pi(kTwoPi * radar.rpm / 60.0 * t);
}

double off_axis_wifi(Point2D tx, Point2D beam_target, Point2D radar_origin) {
  return angle_between(beam_target - tx, radar_origin - tx);
}

double off_axis_radar(Point2D node, const RadarState& radar) {
  Point2D to_node = node - radar.origin;
  Point2D boresight{std::cos(radar.boresight_angle),
                    std::sin(radar.boresight_angle)};
  return angle_between(to_node, boresight);
}

}  // namespace coex
