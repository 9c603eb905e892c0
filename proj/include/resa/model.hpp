#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"

namespace resa {

using json = nlohmann::json;

// Minutes since the scenario epoch. All times in the system are these.
using Minutes = int64_t;

enum class Kind { Flight, Train, Bus, CarRental, Hotel };

constexpr Kind kTransportKinds[] = {Kind::Flight, Kind::Train, Kind::Bus, Kind::CarRental};

bool is_transport(Kind k);
std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

struct TravelOption {
    std::string id;
    Kind kind = Kind::Flight;
    std::string origin;       // empty for Hotel
    std::string destination;  // for Hotel: the city it is in
    Minutes depart_time = 0;  // Hotel: check-in bound of its availability window
    Minutes arrive_time = 0;  // Hotel: check-out bound
    double price = 0.0;       // Hotel: per-night rate
    double distance_km = 0.0; // Hotel: 0
    int64_t capacity = 0;     // Hotel: room-nights available
    double eco_rating = 0.0;  // in [0,1]; transport options carry 0

    // Throws std::invalid_argument naming the violated rule.
    void check() const;
};

struct Catalog {
    std::vector<TravelOption> options;
    std::set<std::string> cities;

    void build_index();

    const TravelOption* by_id(const std::string& id) const;
    // All options matching (kind, origin, destination) in insertion order.
    std::vector<const TravelOption*> find(Kind kind, const std::string& origin,
                                          const std::string& destination) const;
    std::vector<const TravelOption*> hotels_in(const std::string& city) const;

    bool empty() const { return options.empty(); }

private:
    std::map<std::string, size_t> id_index_;
    std::map<std::tuple<int, std::string, std::string>, std::vector<size_t>> route_index_;
};

// Normalized to sum 1 at construction.
struct FitnessWeights {
    double w_cost = 0.25;
    double w_time = 0.25;
    double w_pref = 0.25;
    double w_eco = 0.25;

    FitnessWeights() = default;
    FitnessWeights(double cost, double time, double pref, double eco);
};

struct TripRequest {
    std::string origin;
    std::string destination;
    Minutes earliest_departure = 0;
    Minutes latest_arrival = 0;
    int64_t nights = 0;
    double budget = 0.0;
    std::set<Kind> preferred_modes;
    FitnessWeights weights;

    void check() const;
};

// An ordered selection of options: outbound leg(s), hotel, return leg(s).
// `nights` is carried from the TripRequest that produced the itinerary: the
// hotel slot's cost/carbon scale with it and a booking consumes that many
// room-night units.
struct Itinerary {
    std::vector<std::string> slots;
    int64_t nights = 0;
    double total_cost = 0.0;
    Minutes total_time = 0;
    double total_carbon_kg = 0.0;
};

enum class BudgetBand { Low, Mid, High };

std::string budget_band_name(BudgetBand b);
BudgetBand budget_band_from_name(const std::string& name);

struct UserProfile {
    std::string user_id;
    std::set<Kind> preferred_modes;
    BudgetBand budget_band = BudgetBand::Mid;
    double eco_affinity = 0.0;                                  // in [0,1]
    std::vector<std::pair<std::string, double>> booking_history;  // (option id, rating 1..5)
};

struct Verdict {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the itinerary invariants plus the request window. Unknown option
// ids become "dangling reference" violations, never a crash.
Verdict validate_itinerary(const Itinerary& itinerary, const Catalog& catalog,
                           const TripRequest& request);

struct CarbonConfig;  // sustainability.hpp

struct Totals {
    double cost = 0.0;
    Minutes time = 0;
    double carbon_kg = 0.0;
};

struct InvalidItinerary : std::runtime_error {
    std::vector<std::string> violations;
    explicit InvalidItinerary(std::vector<std::string> v);
};

// Requires the itinerary to reference only known ids; throws InvalidItinerary
// otherwise. cost = transport prices + hotel price x nights; time = transport
// minutes only; carbon per the sustainability model.
Totals itinerary_totals(const Itinerary& itinerary, const Catalog& catalog,
                        const CarbonConfig& carbon);

// --- canonical JSON encoding (the wire and file schema) ---

void to_json(json& j, const TravelOption& o);
void from_json(const json& j, TravelOption& o);
void to_json(json& j, const Catalog& c);
void from_json(const json& j, Catalog& c);
void to_json(json& j, const FitnessWeights& w);
void from_json(const json& j, FitnessWeights& w);
void to_json(json& j, const TripRequest& r);
void from_json(const json& j, TripRequest& r);
void to_json(json& j, const Itinerary& it);
void from_json(const json& j, Itinerary& it);
void to_json(json& j, const UserProfile& p);
void from_json(const json& j, UserProfile& p);

}  // namespace resa
