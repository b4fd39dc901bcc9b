#include "coex/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "coex/units.hpp"

namespace coex {

double coastal_path_gain(const CoastalPathModel& model, double d_meters) {
  if (d_meters <= 0.0)
    throw std::invalid_argument("coastal_path_gain: distance must be positive");
  double gain = model.coefficient * std::pow(d_meters, -model.exponent);
  // The fit amplifies below a few meters; a passive channel cannot. Capping
  // at unity also keeps spatial averages of the aggregate finite when a node
  // can land arbitrarily close to the radar.
  return gain < 1.0 ? gain : 1.0;
}

double umi_path_loss_db(const UmiPathModel& model, double d_meters) {
  if (d_meters < 1.0)
    throw std::invalid_argument("umi_path_loss_db: distance below 1 m validity");
  double lf = std::log10(model.carrier_ghz);
  double ld = std::log10(d_meters);
  if (model.line_of_sight) return 28.0 + 22.0 * ld + 20.0 * lf;
  return 22.7 + 36.7 * ld + 26.0 * lf;
}

double umi_path_gain(const UmiPathModel& model, double d_meters) {
  return db_to_linear(-umi_path_loss_db(model, d_meters));
}

double noise_power_dbm(const NoiseBudget& budget, System system) {
  return system == System::Wifi ? budget.noise_wifi_dbm : budget.noise_radar_dbm;
}

}  // namespace coex
