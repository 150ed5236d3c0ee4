#pragma once

#include "bnexplain/belief.hpp"
#include "bnexplain/builder.hpp"
#include "bnexplain/epistemic.hpp"
#include "bnexplain/error.hpp"
#include "bnexplain/event.hpp"
#include "bnexplain/explain.hpp"
#include "bnexplain/inference.hpp"
#include "bnexplain/io.hpp"
#include "bnexplain/network.hpp"
#include "bnexplain/rank.hpp"
#include "bnexplain/report.hpp"
#include "bnexplain/scenarios.hpp"
