#pragma once

#include "srlx/cleaning.hpp"
#include "srlx/csv.hpp"
#include "srlx/error.hpp"
#include "srlx/onf.hpp"
#include "srlx/pipeline.hpp"
#include "srlx/propbank.hpp"
#include "srlx/stats.hpp"
#include "srlx/treebank.hpp"
