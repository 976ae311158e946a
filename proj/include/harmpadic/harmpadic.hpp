#pragma once

#include "errors.hpp"
#include "modular.hpp"
#include "rational.hpp"
#include "padic.hpp"
#include "bernoulli.hpp"
#include "harmonic.hpp"
#include "jp_search.hpp"
#include "wolstenholme.hpp"
#include "patterns.hpp"
#include "formula1.hpp"
#include "verify.hpp"
#include "serialize.hpp"
#include "cache.hpp"
