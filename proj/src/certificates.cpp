namespace opaqnet {}
