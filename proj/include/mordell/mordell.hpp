#pragma once

#include "mordell/arith.hpp"
#include "mordell/bigint.hpp"
#include "mordell/certificate.hpp"
#include "mordell/cf_oracle.hpp"
#include "mordell/cost.hpp"
#include "mordell/failure.hpp"
#include "mordell/ideal.hpp"
#include "mordell/primality.hpp"
#include "mordell/quadring.hpp"
#include "mordell/verifier.hpp"
