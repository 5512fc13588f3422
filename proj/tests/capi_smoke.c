/* Copyright 2026 The bellstab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Compiled as C to keep the public header free of C++ constructs. */

#include <stdio.h>

#include "bellstab/bellstab.h"

int main(void) {
  bs_params p;
  double ratio = 0.0;
  if (bs_params_reference(&p) != BS_OK) return 1;
  if (bs_params_validate(&p) != BS_OK) return 2;
  if (bs_validity_ratio(&p, &ratio) != BS_OK) return 3;
  if (ratio < 0.02105 || ratio > 0.02106) return 4;
  p.t2_a = 1000.0;
  if (bs_params_validate(&p) != BS_INVALID_PARAMS) return 5;
  printf("%s: %s\n", bs_status_string(BS_INVALID_PARAMS), bs_last_error());
  return 0;
}
