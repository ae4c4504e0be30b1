#ifndef ISRT_ISRT_HPP
#define ISRT_ISRT_HPP

#include "isrt/config.hpp"
#include "isrt/counting_sort.hpp"
#include "isrt/dataset.hpp"
#include "isrt/dtmerge.hpp"
#include "isrt/dtsort.hpp"
#include "isrt/gen.hpp"
#include "isrt/instrument.hpp"
#include "isrt/random.hpp"
#include "isrt/record.hpp"
#include "isrt/sampler.hpp"

#endif  // ISRT_ISRT_HPP
