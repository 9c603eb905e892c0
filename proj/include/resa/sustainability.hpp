#pragma once

#include "resa/model.hpp"

namespace resa {

// Emission factors are order-of-magnitude defaults exposed in config; tests
// pin behavior to these defaults, not to real-world inventories.
struct CarbonConfig {
    double flight_kg_per_km = 0.25;
    double train_kg_per_km = 0.04;
    double bus_kg_per_km = 0.10;
    double car_kg_per_km = 0.17;
    double hotel_kg_per_night = 20.0;
    double short_haul_km = 700.0;

    double factor(Kind k) const;
};

// Transport: distance_km x factor(kind).
// Hotel: nights x hotel_kg_per_night x (1 - 0.5 x eco_rating).
double carbon_estimate(const TravelOption& option, const CarbonConfig& config, int64_t nights);

struct CarbonBounds {
    double min_kg = 0.0;
    double max_kg = 0.0;
};

// 1 - (total_carbon - min)/(max - min); degenerate bounds score 1.
double eco_score(const Itinerary& itinerary, const Catalog& catalog, const CarbonConfig& config,
                 const CarbonBounds& bounds);

struct GreenerSuggestion {
    size_t slot = 0;
    std::string replacement_id;
    double saving_kg = 0.0;
};

void to_json(json& j, const GreenerSuggestion& s);

// Train-over-short-flight swaps plus eco-hotel upgrades, each strictly
// reducing total carbon, sorted by saving descending.
std::vector<GreenerSuggestion> greener_alternatives(const Itinerary& itinerary,
                                                    const Catalog& catalog,
                                                    const CarbonConfig& config);

void to_json(json& j, const CarbonConfig& c);
void from_json(const json& j, CarbonConfig& c);

}  // namespace resa
