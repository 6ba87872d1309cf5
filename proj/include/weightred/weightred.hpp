#pragma once

#include "weightred/error.hpp"
#include "weightred/gf.hpp"
#include "weightred/linalg.hpp"
#include "weightred/modrep.hpp"
#include "weightred/morphisms.hpp"
#include "weightred/exceptional.hpp"
#include "weightred/brauer.hpp"
#include "weightred/meataxe.hpp"
#include "weightred/invariants.hpp"
#include "weightred/quadfield.hpp"
