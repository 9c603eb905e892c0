#pragma once

#include <filesystem>
#include <map>

#include "resa/model.hpp"

namespace resa {

struct ScenarioParams {
    uint64_t seed = 42;
    int n_cities = 4;
    int options_per_route = 2;
    int n_users = 50;
    int n_history_days = 366;
    std::map<Kind, double> base_price = {{Kind::Flight, 520.0},
                                         {Kind::Train, 260.0},
                                         {Kind::Bus, 140.0},
                                         {Kind::CarRental, 320.0},
                                         {Kind::Hotel, 180.0}};
    double seasonal_amplitude = 35.0;
    double noise_sigma = 20.0;
    std::set<int> peak_days;  // day-of-year values

    void check() const;
};

struct PriceObservation {
    std::string origin;
    std::string destination;
    Kind kind = Kind::Flight;
    int day_of_year = 1;  // 1..366
    int64_t days_before_departure = 0;
    int is_peak = 0;
    double distance_km = 0.0;
    double observed_price = 0.0;
};

// The linear generating law behind gen_history, recorded in meta.json so
// model-recovery tests can compare fitted coefficients against the truth:
//   price = base_price(kind) + beta_distance * distance_km
//         + beta_days_before * days_before_departure
//         + a_sin * sin(2*pi*day/366) + a_cos * cos(2*pi*day/366)
//         + peak_bump * is_peak + Normal(0, noise_sigma)
struct GeneratingLaw {
    std::map<Kind, double> base_price;
    double beta_distance = 0.45;
    double beta_days_before = -2.5;
    double a_sin = 0.0;  // = seasonal_amplitude
    double a_cos = 0.0;  // = 0.6 * seasonal_amplitude
    double peak_bump = 60.0;
    double noise_sigma = 0.0;

    double clean_price(Kind kind, double distance_km, int64_t days_before, int day_of_year,
                       bool peak) const;
};

struct History {
    std::vector<PriceObservation> observations;
    GeneratingLaw law;
};

struct Scenario {
    ScenarioParams params;
    Catalog catalog;
    std::vector<UserProfile> users;
    History history;
};

double seasonal_sin(int day_of_year);
double seasonal_cos(int day_of_year);

Catalog gen_catalog(const ScenarioParams& params);
std::vector<UserProfile> gen_users(const ScenarioParams& params);
// Fills users' booking histories in place and returns the observations.
History gen_history(const ScenarioParams& params, const Catalog& catalog,
                    std::vector<UserProfile>& users);

Scenario gen_scenario(const ScenarioParams& params);

// Scenario bundle: a directory of catalog.json, users.json, history.json,
// meta.json. save is deterministic byte-for-byte given the same scenario.
void save_scenario(const Scenario& scenario, const std::filesystem::path& dir);
Scenario load_scenario(const std::filesystem::path& dir);

void to_json(json& j, const ScenarioParams& p);
void from_json(const json& j, ScenarioParams& p);
void to_json(json& j, const PriceObservation& o);
void from_json(const json& j, PriceObservation& o);
void to_json(json& j, const GeneratingLaw& g);
void from_json(const json& j, GeneratingLaw& g);

}  // namespace resa
