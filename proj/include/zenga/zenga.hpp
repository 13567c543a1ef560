// Umbrella header.
#pragma once

#include "zenga/asymptotics.hpp"
#include "zenga/compare.hpp"
#include "zenga/diagnostics.hpp"
#include "zenga/distribution.hpp"
#include "zenga/indices.hpp"
#include "zenga/influence.hpp"
#include "zenga/io.hpp"
#include "zenga/montecarlo.hpp"
#include "zenga/normal.hpp"
