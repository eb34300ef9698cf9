#pragma once

#include "oscsync/chain.hpp"
#include "oscsync/errors.hpp"
#include "oscsync/fraction.hpp"
#include "oscsync/io.hpp"
#include "oscsync/logic.hpp"
#include "oscsync/model.hpp"
#include "oscsync/rng.hpp"
#include "oscsync/sweep.hpp"
#include "oscsync/sync.hpp"
#include "oscsync/version.hpp"
