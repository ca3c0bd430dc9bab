#pragma once

#include "channel.hpp"
#include "optimizer.hpp"
#include "rng.hpp"
#include "secrecy.hpp"
#include "smartgrid.hpp"
#include "specfun.hpp"
