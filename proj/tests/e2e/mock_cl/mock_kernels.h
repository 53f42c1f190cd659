// Copyright 2026 The gmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Kernel table shared by the mock runtime and the generated kernel shim.

#ifndef GMC_MOCK_KERNELS_H
#define GMC_MOCK_KERNELS_H

#include <stddef.h>

struct mock_kernel {
  const char* name;
  int nargs;
  void (*call)(void** args);
};

/* Terminated by an entry with a null name. */
extern const struct mock_kernel mock_kernels[];

size_t mock_global_id(unsigned dim);

/* Lets OpenCL C kernel source compile as C99. */
#define __kernel
#define __global
#define __constant const
#define uchar unsigned char
#define uint unsigned int
#define get_global_id(d) mock_global_id(d)

#endif
