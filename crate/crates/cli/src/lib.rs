pub mod cli_frontend;
