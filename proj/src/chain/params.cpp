#include <cmath>
#include <string>

#include "h2grid/chain.hpp"

namespace h2grid::chain {

double annuity_factor(double wacc, double years) {
  if (!(years >= 1.0)) throw Error(ErrorCode::InvalidDepreciation, "depreciation period must be at least one year");
  if (!(wacc >= 0.0) || !std::isfinite(wacc)) throw Error(ErrorCode::InvalidInput, "WACC must be finite and nonnegative");
  if (wacc == 0.0) return 1.0 / years;
  const double g = std::pow(1.0 + wacc, years);
  return g * wacc / (g - 1.0);
}

double ConversionStep::investment(double kg_day) const {
  if (kg_day <= 0.0) return 0.0;
  return coef_eur * std::pow(kg_day / ref_kg_day, exponent);
}

double compression_energy_kwh_per_kg(double p_in_bar, double p_out_bar, double temperature_k, double kappa,
                                     double efficiency) {
  constexpr double kGasConstantH2 = 4124.2;  // J/(kg K)
  const double ratio = std::pow(p_out_bar / p_in_bar, (kappa - 1.0) / kappa) - 1.0;
  const double joule_per_kg = kappa / (kappa - 1.0) * kGasConstantH2 * temperature_k * ratio / efficiency;
  return joule_per_kg / 3.6e6;
}

ConversionStep default_compressor(double ec_kwh_per_kg) {
  // 15,000 EUR/kW * P^0.6089 * 3 with P the compressor power in kW, P = x * EC / 24.
  return {"compression", 45000.0, 24.0 / ec_kwh_per_kg, 0.6089, 15.0, 0.04, ec_kwh_per_kg, 0.0, 0.005};
}

ConversionStep default_liquefaction() { return {"liquefaction", 105e6, 50000.0, 0.66, 20.0, 0.04, 6.78, 0.0, 0.0165}; }

ConversionStep default_evaporation() { return {"evaporation", 3.0, 1.0, 1.0, 10.0, 0.03, 0.6, 0.0, 0.0}; }

ConversionStep default_hydrogenation() { return {"hydrogenation", 40e6, 300000.0, 0.66, 20.0, 0.03, 0.37, 0.0, 0.01}; }

ConversionStep default_dehydrogenation() {
  return {"dehydrogenation", 30e6, 300000.0, 0.66, 20.0, 0.03, 0.37, 11.7, 0.01};
}

CarrierParams default_carrier_params(Carrier state) {
  CarrierParams c;
  c.state = state;
  c.station = demand::default_station_params(state);
  switch (state) {
    case Carrier::LH2:
      c.trailer_capacity_kg = 4300.0;
      c.trailer_invest_eur = 860000.0;
      c.production_step = default_liquefaction();
      c.consumption_step = default_evaporation();
      break;
    case Carrier::GH2:
      c.trailer_capacity_kg = 1100.0;
      c.trailer_invest_eur = 660000.0;
      c.production_step = default_compressor();
      break;
    case Carrier::LOHC:
      c.trailer_capacity_kg = 1620.0;
      c.trailer_invest_eur = 150000.0;
      c.production_step = default_hydrogenation();
      c.consumption_step = default_dehydrogenation();
      break;
  }
  return c;
}

}  // namespace h2grid::chain
