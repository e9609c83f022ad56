#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "farmtrade/tariff.hpp"

namespace farmtrade {

struct Order {
    std::string farm_id;
    double quantity_kwh = 0.0;
};

// One step's offers and bids. At most one order per farm and side, and no
// farm on both sides (guaranteed upstream by FarmDecision mutual exclusion,
// revalidated here).
struct OrderBook {
    std::vector<Order> offers;
    std::vector<Order> bids;
    TariffTier tier = TariffTier::Day;
    std::int64_t step_index = 0;
};

// Internal prices for one step. sdr is empty when total demand is zero; the
// clearing then follows the oversupply branch.
struct PriceQuote {
    std::optional<double> sdr;
    double isp = 0.0;
    double ibp = 0.0;
};

struct FarmSettlement {
    std::string farm_id;
    double bought_internal_kwh = 0.0;
    double bought_grid_kwh = 0.0;
    double sold_internal_kwh = 0.0;
    double sold_grid_kwh = 0.0;
    double cost = 0.0;    // gross cash paid this step
    double revenue = 0.0; // gross cash received this step
    double cash_delta = 0.0; // revenue - cost
};

struct MarketResult {
    PriceQuote quote;
    std::vector<FarmSettlement> settlements; // sorted by farm_id
    double tsp = 0.0;
    double tbp = 0.0;
    double grid_import_kwh = 0.0;
    double grid_export_kwh = 0.0;
    // Auctioneer cash surplus. Zero for SDR <= 1; (lambda_buy - lambda_sell)
    // * TBP in the oversupply branch, kept as an explicit ledger line.
    double auctioneer_imbalance = 0.0;
};

// TSP/TBP; empty when tbp == 0. Negative inputs are a contract violation.
std::optional<double> supply_demand_ratio(double tsp, double tbp);

// Internal selling price. Hyperbolic blend between lambda_buy (sdr=0) and
// lambda_sell (sdr=1); lambda_sell beyond. Requires 0 < lambda_sell <
// lambda_buy (ConfigError otherwise) and sdr >= 0.
double internal_selling_price(double sdr, double lambda_sell, double lambda_buy);

// Internal buying price: isp*sdr + lambda_buy*(1-sdr) on [0,1]; lambda_buy
// beyond.
double internal_buying_price(double isp, double sdr, double lambda_buy);

// Clears one step. With P2P disabled everything passes through the grid at
// the tariff prices. With P2P enabled the short side fills completely and the
// long side is served pro-rata, sellers paid ISP and buyers charged IBP on
// their full quantity; residuals transact with the grid. Settlement cash is
// accumulated in farm_id order so results are bit-reproducible.
MarketResult clear_market(const OrderBook& book, const TariffSchedule& schedule, bool p2p_enabled);

} // namespace farmtrade
