#pragma once

#include "subposet/bignum.hpp"
#include "subposet/constructions.hpp"
#include "subposet/copies.hpp"
#include "subposet/digraph.hpp"
#include "subposet/errors.hpp"
#include "subposet/family.hpp"
#include "subposet/formulas.hpp"
#include "subposet/poset.hpp"
#include "subposet/proof.hpp"
#include "subposet/search.hpp"
