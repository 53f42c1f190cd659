/* Host driver for model 'downscaler', generated by gmc.
 * usage: driver KERNELS.cl INPUT.raw OUTPUT.raw [FRAMES]
 * Do not edit. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#ifdef __APPLE__
#include <OpenCL/opencl.h>
#else
#include <CL/cl.h>
#endif

#define uchar unsigned char
#define uint unsigned int

#define CHECK(call)                                                     \
  do {                                                                  \
    cl_int status_ = (call);                                            \
    if (status_ != CL_SUCCESS) {                                        \
      fprintf(stderr, "%s:%d: %s failed (%d)\n", __FILE__, __LINE__,    \
              #call, (int)status_);                                     \
      exit(1);                                                          \
    }                                                                   \
  } while (0)

static char* read_source(const char* path, size_t* size)
{
  FILE* f = fopen(path, "rb");
  char* text;
  long n;
  if (!f) {
    fprintf(stderr, "cannot open %s\n", path);
    exit(2);
  }
  fseek(f, 0, SEEK_END);
  n = ftell(f);
  fseek(f, 0, SEEK_SET);
  text = (char*)malloc((size_t)n + 1);
  if (!text || fread(text, 1, (size_t)n, f) != (size_t)n) {
    fprintf(stderr, "cannot read %s\n", path);
    exit(2);
  }
  text[n] = '\0';
  fclose(f);
  *size = (size_t)n;
  return text;
}

static void* alloc_zeroed(size_t bytes)
{
  void* p = calloc(bytes ? bytes : 1, 1);
  if (!p) {
    fprintf(stderr, "out of memory\n");
    exit(1);
  }
  return p;
}

static cl_mem create_buffer(cl_context context, cl_command_queue queue, cl_mem_flags flags,
                            size_t bytes)
{
  cl_int err;
  void* zeros = alloc_zeroed(bytes);
  cl_mem buffer = clCreateBuffer(context, flags, bytes, NULL, &err);
  CHECK(err);
  CHECK(clEnqueueWriteBuffer(queue, buffer, CL_TRUE, 0, bytes, zeros, 0, NULL, NULL));
  free(zeros);
  return buffer;
}

static void gmc_h2d(cl_command_queue queue, cl_mem dst, const void* src, size_t bytes,
                    unsigned long long* counter)
{
  CHECK(clEnqueueWriteBuffer(queue, dst, CL_TRUE, 0, bytes, src, 0, NULL, NULL));
  *counter += bytes;
}

static void gmc_d2h(cl_command_queue queue, void* dst, cl_mem src, size_t bytes,
                    unsigned long long* counter)
{
  CHECK(clEnqueueReadBuffer(queue, src, CL_TRUE, 0, bytes, dst, 0, NULL, NULL));
  *counter += bytes;
}

/* 1 on a full read, 0 at end of file, exits on a truncated frame. */
static int read_plane(FILE* in, void* dst, size_t bytes, int first)
{
  size_t got = fread(dst, 1, bytes, in);
  if (got == bytes)
    return 1;
  if (got == 0 && first && feof(in))
    return 0;
  fprintf(stderr, "input ends inside a frame\n");
  exit(2);
}

int main(int argc, char** argv)
{
  cl_platform_id platform;
  cl_device_id device;
  cl_context context;
  cl_command_queue queue;
  cl_program program;
  cl_int err;
  char* source;
  size_t source_size;
  FILE* in;
  FILE* out;
  long max_frames = -1;
  long frame;
  unsigned long long h2d_bytes = 0;
  unsigned long long d2h_bytes = 0;
  uchar* h_y_in;
  uchar* h_u_in;
  uchar* h_v_in;
  uchar* h_y_mid;
  uchar* h_u_mid;
  uchar* h_v_mid;
  uchar* h_y_out;
  uchar* h_u_out;
  uchar* h_v_out;
  cl_mem d_y_in;
  cl_mem d_u_in;
  cl_mem d_v_in;
  cl_mem d_y_mid;
  cl_mem d_u_mid;
  cl_mem d_v_mid;
  cl_mem d_y_out;
  cl_mem d_u_out;
  cl_mem d_v_out;
  cl_kernel k_yhfk;
  cl_kernel k_uhfk;
  cl_kernel k_vhfk;
  cl_kernel k_yvfk;
  cl_kernel k_uvfk;
  cl_kernel k_vvfk;

  if (argc < 4) {
    fprintf(stderr, "usage: %s KERNELS.cl INPUT.raw OUTPUT.raw [FRAMES]\n", argv[0]);
    return 2;
  }
  if (argc > 4)
    max_frames = atol(argv[4]);

  CHECK(clGetPlatformIDs(1, &platform, NULL));
  if (clGetDeviceIDs(platform, CL_DEVICE_TYPE_GPU, 1, &device, NULL) != CL_SUCCESS)
    CHECK(clGetDeviceIDs(platform, CL_DEVICE_TYPE_ALL, 1, &device, NULL));
  context = clCreateContext(NULL, 1, &device, NULL, NULL, &err);
  CHECK(err);
  queue = clCreateCommandQueue(context, device, 0, &err);
  CHECK(err);

  source = read_source(argv[1], &source_size);
  program = clCreateProgramWithSource(context, 1, (const char**)&source, &source_size, &err);
  CHECK(err);
  if (clBuildProgram(program, 1, &device, "", NULL, NULL) != CL_SUCCESS) {
    size_t log_size = 0;
    char* build_log;
    clGetProgramBuildInfo(program, device, CL_PROGRAM_BUILD_LOG, 0, NULL, &log_size);
    build_log = (char*)alloc_zeroed(log_size + 1);
    clGetProgramBuildInfo(program, device, CL_PROGRAM_BUILD_LOG, log_size, build_log, NULL);
    fprintf(stderr, "kernel build failed:\n%s\n", build_log);
    return 1;
  }

  k_yhfk = clCreateKernel(program, "yhfk", &err);
  CHECK(err);
  k_uhfk = clCreateKernel(program, "uhfk", &err);
  CHECK(err);
  k_vhfk = clCreateKernel(program, "vhfk", &err);
  CHECK(err);
  k_yvfk = clCreateKernel(program, "yvfk", &err);
  CHECK(err);
  k_uvfk = clCreateKernel(program, "uvfk", &err);
  CHECK(err);
  k_vvfk = clCreateKernel(program, "vvfk", &err);
  CHECK(err);

  h_y_in = (uchar*)alloc_zeroed(101376);
  h_u_in = (uchar*)alloc_zeroed(25344);
  h_v_in = (uchar*)alloc_zeroed(25344);
  h_y_mid = (uchar*)alloc_zeroed(38016);
  h_u_mid = (uchar*)alloc_zeroed(9504);
  h_v_mid = (uchar*)alloc_zeroed(9504);
  h_y_out = (uchar*)alloc_zeroed(16896);
  h_u_out = (uchar*)alloc_zeroed(4224);
  h_v_out = (uchar*)alloc_zeroed(4224);

  d_y_in = create_buffer(context, queue, CL_MEM_READ_ONLY, 101376);
  d_u_in = create_buffer(context, queue, CL_MEM_READ_ONLY, 25344);
  d_v_in = create_buffer(context, queue, CL_MEM_READ_ONLY, 25344);
  d_y_mid = create_buffer(context, queue, CL_MEM_READ_WRITE, 38016);
  d_u_mid = create_buffer(context, queue, CL_MEM_READ_WRITE, 9504);
  d_v_mid = create_buffer(context, queue, CL_MEM_READ_WRITE, 9504);
  d_y_out = create_buffer(context, queue, CL_MEM_READ_WRITE, 16896);
  d_u_out = create_buffer(context, queue, CL_MEM_READ_WRITE, 4224);
  d_v_out = create_buffer(context, queue, CL_MEM_READ_WRITE, 4224);

  CHECK(clSetKernelArg(k_yhfk, 0, sizeof(cl_mem), &d_y_in));
  CHECK(clSetKernelArg(k_yhfk, 1, sizeof(cl_mem), &d_y_mid));
  CHECK(clSetKernelArg(k_uhfk, 0, sizeof(cl_mem), &d_u_in));
  CHECK(clSetKernelArg(k_uhfk, 1, sizeof(cl_mem), &d_u_mid));
  CHECK(clSetKernelArg(k_vhfk, 0, sizeof(cl_mem), &d_v_in));
  CHECK(clSetKernelArg(k_vhfk, 1, sizeof(cl_mem), &d_v_mid));
  CHECK(clSetKernelArg(k_yvfk, 0, sizeof(cl_mem), &d_y_mid));
  CHECK(clSetKernelArg(k_yvfk, 1, sizeof(cl_mem), &d_y_out));
  CHECK(clSetKernelArg(k_uvfk, 0, sizeof(cl_mem), &d_u_mid));
  CHECK(clSetKernelArg(k_uvfk, 1, sizeof(cl_mem), &d_u_out));
  CHECK(clSetKernelArg(k_vvfk, 0, sizeof(cl_mem), &d_v_mid));
  CHECK(clSetKernelArg(k_vvfk, 1, sizeof(cl_mem), &d_v_out));

  in = fopen(argv[2], "rb");
  out = fopen(argv[3], "wb");
  if (!in || !out) {
    fprintf(stderr, "cannot open frame files\n");
    return 2;
  }

  for (frame = 0; max_frames < 0 || frame < max_frames; ++frame) {
    if (!read_plane(in, h_y_in, 101376, 1))
      break;
    if (!read_plane(in, h_u_in, 25344, 0))
      break;
    if (!read_plane(in, h_v_in, 25344, 0))
      break;

    /* step 0: h2d y_in */
    gmc_h2d(queue, d_y_in, h_y_in, 101376, &h2d_bytes);
    /* step 1: launch yhfk */
    {
      const size_t global_size[2] = {288, 48};
      const size_t local_size[2] = {16, 16};
      CHECK(clEnqueueNDRangeKernel(queue, k_yhfk, 2, NULL, global_size, local_size, 0, NULL, NULL));
    }
    /* step 2: h2d u_in */
    gmc_h2d(queue, d_u_in, h_u_in, 25344, &h2d_bytes);
    /* step 3: launch uhfk */
    {
      const size_t global_size[2] = {144, 32};
      const size_t local_size[2] = {16, 16};
      CHECK(clEnqueueNDRangeKernel(queue, k_uhfk, 2, NULL, global_size, local_size, 0, NULL, NULL));
    }
    /* step 4: h2d v_in */
    gmc_h2d(queue, d_v_in, h_v_in, 25344, &h2d_bytes);
    /* step 5: launch vhfk */
    {
      const size_t global_size[2] = {144, 32};
      const size_t local_size[2] = {16, 16};
      CHECK(clEnqueueNDRangeKernel(queue, k_vhfk, 2, NULL, global_size, local_size, 0, NULL, NULL));
    }
    /* step 6: launch yvfk */
    {
      const size_t global_size[2] = {32, 144};
      const size_t local_size[2] = {16, 16};
      CHECK(clEnqueueNDRangeKernel(queue, k_yvfk, 2, NULL, global_size, local_size, 0, NULL, NULL));
    }
    /* step 7: d2h y_out */
    gmc_d2h(queue, h_y_out, d_y_out, 16896, &d2h_bytes);
    /* step 8: launch uvfk */
    {
      const size_t global_size[2] = {16, 80};
      const size_t local_size[2] = {16, 16};
      CHECK(clEnqueueNDRangeKernel(queue, k_uvfk, 2, NULL, global_size, local_size, 0, NULL, NULL));
    }
    /* step 9: d2h u_out */
    gmc_d2h(queue, h_u_out, d_u_out, 4224, &d2h_bytes);
    /* step 10: launch vvfk */
    {
      const size_t global_size[2] = {16, 80};
      const size_t local_size[2] = {16, 16};
      CHECK(clEnqueueNDRangeKernel(queue, k_vvfk, 2, NULL, global_size, local_size, 0, NULL, NULL));
    }
    /* step 11: d2h v_out */
    gmc_d2h(queue, h_v_out, d_v_out, 4224, &d2h_bytes);
    CHECK(clFinish(queue));

    if (fwrite(h_y_out, 1, 16896, out) != 16896) {
      fprintf(stderr, "cannot write output\n");
      return 2;
    }
    if (fwrite(h_u_out, 1, 4224, out) != 4224) {
      fprintf(stderr, "cannot write output\n");
      return 2;
    }
    if (fwrite(h_v_out, 1, 4224, out) != 4224) {
      fprintf(stderr, "cannot write output\n");
      return 2;
    }
  }

  printf("h2d_bytes=%llu d2h_bytes=%llu\n", h2d_bytes, d2h_bytes);

  fclose(in);
  fclose(out);
  clReleaseKernel(k_yhfk);
  clReleaseKernel(k_uhfk);
  clReleaseKernel(k_vhfk);
  clReleaseKernel(k_yvfk);
  clReleaseKernel(k_uvfk);
  clReleaseKernel(k_vvfk);
  clReleaseMemObject(d_y_in);
  clReleaseMemObject(d_u_in);
  clReleaseMemObject(d_v_in);
  clReleaseMemObject(d_y_mid);
  clReleaseMemObject(d_u_mid);
  clReleaseMemObject(d_v_mid);
  clReleaseMemObject(d_y_out);
  clReleaseMemObject(d_u_out);
  clReleaseMemObject(d_v_out);
  free(h_y_in);
  free(h_u_in);
  free(h_v_in);
  free(h_y_mid);
  free(h_u_mid);
  free(h_v_mid);
  free(h_y_out);
  free(h_u_out);
  free(h_v_out);
  free(source);
  clReleaseProgram(program);
  clReleaseCommandQueue(queue);
  clReleaseContext(context);
  return 0;
}
