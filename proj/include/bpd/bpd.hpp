#pragma once

#include "bpd/analysis.hpp"
#include "bpd/base_code.hpp"
#include "bpd/codec.hpp"
#include "bpd/descriptor.hpp"
#include "bpd/errors.hpp"
#include "bpd/gf.hpp"
#include "bpd/mds_check.hpp"
#include "bpd/piggyback.hpp"
