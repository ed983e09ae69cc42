// C API implementation pending
