#pragma once

#include "gwrecon/fixedloci.hpp"
#include "gwrecon/invariants.hpp"
#include "gwrecon/kontsevich.hpp"
#include "gwrecon/localization.hpp"
#include "gwrecon/modspace.hpp"
#include "gwrecon/quantum.hpp"
#include "gwrecon/rational.hpp"
#include "gwrecon/reconstruction.hpp"
#include "gwrecon/reduction.hpp"
#include "gwrecon/relations.hpp"
#include "gwrecon/schubert.hpp"
#include "gwrecon/symgroup.hpp"
