#pragma once

#include "scalar.hpp"
#include "multi_index.hpp"
#include "sym_tensor.hpp"
#include "series.hpp"
#include "appell.hpp"
#include "dchi.hpp"
#include "dualsys.hpp"
#include "hspace.hpp"
#include "kingman.hpp"
#include "random.hpp"
#include "json_io.hpp"
