#pragma once

// Umbrella header: CDS term-structure no-arbitrage analytics.

#include "cdsarb/annuity.hpp"
#include "cdsarb/aoa.hpp"
#include "cdsarb/bootstrap.hpp"
#include "cdsarb/csv.hpp"
#include "cdsarb/dates.hpp"
#include "cdsarb/discount.hpp"
#include "cdsarb/errors.hpp"
#include "cdsarb/fair_spread.hpp"
#include "cdsarb/irs.hpp"
#include "cdsarb/market.hpp"
#include "cdsarb/numerics.hpp"
#include "cdsarb/report.hpp"
#include "cdsarb/scan.hpp"
#include "cdsarb/strategy.hpp"
#include "cdsarb/survival.hpp"
#include "cdsarb/synthetic.hpp"
#include "cdsarb/tenor.hpp"
